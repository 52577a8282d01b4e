#include "degdet/oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "degdet/errors.hpp"
#include "degdet/ncrank.hpp"

namespace degdet {

Residue evaluation_generator(PrimeModulus mod, std::int64_t count) {
  const std::uint64_t p = mod.value();
  if (count < 1) return 1;
  if (static_cast<std::uint64_t>(count) > p - 1)
    throw PrecisionUnsupported(std::to_string(count) + " evaluation points do not fit in GF(" + std::to_string(p) + ")");
  for (Residue g = 2; g < p; ++g) {
    // Powers g^0..g^{count-1} are distinct iff g^j != 1 for 0 < j < count.
    Residue x = 1;
    bool distinct = true;
    for (std::int64_t j = 1; j < count; ++j) {
      x = mod.mul(x, g);
      if (x == 1) {
        distinct = false;
        break;
      }
    }
    if (distinct) return g;
  }
  if (count == 1) return 1;
  throw PrecisionUnsupported("no element of GF(" + std::to_string(p) + ") has order >= " + std::to_string(count));
}

Degree degdet_commutative(const Instance& inst, std::uint64_t seed, int trials) {
  inst.validate();
  const PrimeModulus mod = inst.modulus;
  const Index n = inst.n;
  const std::int64_t cmin = *std::min_element(inst.costs.begin(), inst.costs.end());
  const std::int64_t cmax = *std::max_element(inst.costs.begin(), inst.costs.end()) - cmin;
  const std::int64_t points = n * cmax + 1;
  if (static_cast<std::uint64_t>(points) + 1 > mod.value())
    throw PrecisionUnsupported("commutative oracle needs p > " + std::to_string(points) + ", got p = " +
                               std::to_string(mod.value()));
  const Residue g = evaluation_generator(mod, points);
  const Residue g_inv = mod.inv(g);

  // Newton divided differences on x_j = g^j. The denominator
  // x_i - x_{i-l} = g^{i-l} (g^l - 1) is inverted from two tables.
  std::vector<Residue> xs(static_cast<std::size_t>(points)), inv_pow(static_cast<std::size_t>(points)),
      inv_gap(static_cast<std::size_t>(points));
  xs[0] = 1;
  inv_pow[0] = 1;
  for (std::int64_t j = 1; j < points; ++j) {
    xs[j] = mod.mul(xs[j - 1], g);
    inv_pow[j] = mod.mul(inv_pow[j - 1], g_inv);
  }
  for (std::int64_t l = 1; l < points; ++l) inv_gap[l] = mod.inv(mod.sub(xs[l], 1));

  Degree best = Degree::minus_infinity();
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    std::map<std::int64_t, FieldMatrix> by_cost;
    for (std::size_t k = 0; k < inst.m(); ++k) {
      auto [it, _] = by_cost.try_emplace(inst.costs[k] - cmin, FieldMatrix(mod, n, n));
      add_scaled(it->second, inst.mats[k], random_residue(rng, mod));
    }
    std::vector<Residue> coef(static_cast<std::size_t>(points));
    for (std::int64_t j = 0; j < points; ++j) {
      FieldMatrix at(mod, n, n);
      for (const auto& [c, mat] : by_cost) add_scaled(at, mat, mod.pow(xs[j], static_cast<std::uint64_t>(c)));
      coef[j] = determinant(at);
    }
    for (std::int64_t l = 1; l < points; ++l)
      for (std::int64_t i = points - 1; i >= l; --i)
        coef[i] = mod.mul(mod.mul(mod.sub(coef[i], coef[i - 1]), inv_pow[i - l]), inv_gap[l]);
    // The Newton basis is triangular in degree.
    for (std::int64_t i = points - 1; i >= 0; --i)
      if (coef[i] != 0) {
        best = std::max(best, Degree(i + n * cmin));
        break;
      }
  }
  return best;
}

Instance blowup_instance(const Instance& inst, Index d) {
  inst.validate();
  const BlowupPencil bp = build_blowup(ConstPencil(inst.n, inst.mats), d);
  Instance out;
  out.modulus = inst.modulus;
  out.n = inst.n * d;
  out.mats = bp.mats;
  for (std::size_t v = 0; v < bp.mats.size(); ++v) out.costs.push_back(inst.costs[bp.source_term[v]]);
  out.meta = inst.meta;
  out.meta["blowup_order"] = std::to_string(d);
  return out;
}

Degree degdet_blowup(const Instance& inst, std::uint64_t seed, int retries) {
  const Index d = blowup_order(inst.n);
  const Instance big = blowup_instance(inst, d);
  for (int attempt = 0; attempt < retries; ++attempt) {
    const Degree v = degdet_commutative(big, mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    if (!v.is_finite()) return v;
    if (v.value() % d == 0) return Degree(v.value() / d);
  }
  throw RetryExhausted("blow-up degree never divisible by " + std::to_string(d));
}

Degree hungarian(const WeightGrid& weights) {
  const std::size_t n = weights.size();
  if (n == 0) return Degree(0);
  std::int64_t maxabs = 0;
  for (const auto& row : weights) {
    if (row.size() != n) throw DimensionMismatch("weight grid must be square");
    for (const auto& w : row)
      if (w) maxabs = std::max<std::int64_t>(maxabs, *w < 0 ? -*w : *w);
  }
  // Absent cells cost more than any feasible assignment can differ by.
  const std::int64_t big = (maxabs + 1) * static_cast<std::int64_t>(2 * n + 2);
  auto cost = [&](std::size_t i, std::size_t j) -> std::int64_t {
    const auto& w = weights[i][j];
    return w ? -*w : big;
  };
  // Shortest augmenting paths with potentials (1-based, minimisation).
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<bool> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      std::int64_t delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::int64_t total = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    const auto& w = weights[match[j] - 1][j - 1];
    if (!w) return Degree::minus_infinity();
    total += *w;
  }
  return Degree(total);
}

std::optional<WeightGrid> bipartite_weights(const Instance& inst) {
  const auto n = static_cast<std::size_t>(inst.n);
  WeightGrid grid(n, std::vector<std::optional<std::int64_t>>(n));
  for (std::size_t k = 0; k < inst.m(); ++k) {
    const auto& a = inst.mats[k];
    Index hits = 0, ci = 0, cj = 0;
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0) {
          ++hits;
          ci = i;
          cj = j;
        }
    if (hits != 1) return std::nullopt;
    auto& cell = grid[ci][cj];
    cell = cell ? std::max(*cell, inst.costs[k]) : inst.costs[k];
  }
  return grid;
}

Degree NewtonSupport::lp(const std::vector<std::int64_t>& costs) const {
  Degree best = Degree::minus_infinity();
  for (const auto& u : exponents) {
    if (u.size() != costs.size()) throw DimensionMismatch("cost vector length differs from variable count");
    std::int64_t v = 0;
    for (std::size_t k = 0; k < u.size(); ++k) v += costs[k] * u[k];
    best = std::max(best, Degree(v));
  }
  return best;
}

NewtonSupport newton_small(const Instance& inst) {
  inst.validate();
  if (inst.n > 7) throw SizeLimitExceeded("newton_small expands n! terms; n = " + std::to_string(inst.n) + " > 7");
  const PrimeModulus mod = inst.modulus;
  const auto n = static_cast<std::size_t>(inst.n);
  const std::size_t m = inst.m();
  std::map<ExponentVector, Residue> total;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    std::map<ExponentVector, Residue> poly{{ExponentVector(m, 0), inversions % 2 ? mod.neg(1) : Residue{1}}};
    for (std::size_t i = 0; i < n && !poly.empty(); ++i) {
      std::map<ExponentVector, Residue> next;
      for (std::size_t k = 0; k < m; ++k) {
        const Residue a = inst.mats[k](static_cast<Index>(i), static_cast<Index>(perm[i]));
        if (a == 0) continue;
        for (const auto& [u, c] : poly) {
          ExponentVector w = u;
          ++w[k];
          auto& dst = next[w];
          dst = mod.add(dst, mod.mul(c, a));
        }
      }
      poly = std::move(next);
    }
    for (const auto& [u, c] : poly) {
      auto& dst = total[u];
      dst = mod.add(dst, c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  NewtonSupport out;
  for (const auto& [u, c] : total)
    if (c != 0) out.exponents.push_back(u);
  return out;
}

}  // namespace degdet
