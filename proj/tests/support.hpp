#pragma once

// Independent reference computations used as oracles by the tests. They share
// nothing with the library beyond the field type and the instance structs.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/oracles.hpp"

namespace testing_support {

using degdet::Degree;
using degdet::Index;
using degdet::Instance;
using degdet::PrimeModulus;
using degdet::Residue;

/// Max-weight perfect matching by trying every permutation.
inline Degree permutation_max(const degdet::WeightGrid& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Degree best = Degree::minus_infinity();
  do {
    std::int64_t total = 0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!w[i][perm[i]]) ok = false;
      else total += *w[i][perm[i]];
    }
    if (ok) best = std::max(best, Degree(total));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Polynomial in t with residue coefficients, keyed by exponent.
using TPoly = std::map<std::int64_t, Residue>;

inline TPoly poly_mul(const TPoly& a, const TPoly& b, PrimeModulus mod) {
  TPoly out;
  for (const auto& [da, ca] : a)
    for (const auto& [db, cb] : b) {
      auto& dst = out[da + db];
      dst = mod.add(dst, mod.mul(ca, cb));
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// deg det A[c] at a fixed scalar point x = lambda, by the Leibniz expansion
/// with exact polynomial products in t.
inline Degree leibniz_degree(const Instance& inst, const std::vector<Residue>& lambda) {
  const PrimeModulus mod = inst.modulus;
  const auto n = static_cast<std::size_t>(inst.n);
  std::vector<std::vector<TPoly>> entry(n, std::vector<TPoly>(n));
  for (std::size_t k = 0; k < inst.m(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Residue a = mod.mul(inst.mats[k](static_cast<Index>(i), static_cast<Index>(j)), lambda[k]);
        if (a == 0) continue;
        auto& dst = entry[i][j][inst.costs[k]];
        dst = mod.add(dst, a);
      }
  for (auto& row : entry)
    for (auto& e : row) std::erase_if(e, [](const auto& kv) { return kv.second == 0; });
  TPoly total;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    TPoly term{{0, inversions % 2 ? mod.neg(1) : Residue{1}}};
    for (std::size_t i = 0; i < n && !term.empty(); ++i) term = poly_mul(term, entry[i][perm[i]], mod);
    for (const auto& [d, c] : term) {
      auto& dst = total[d];
      dst = mod.add(dst, c);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total.empty() ? Degree::minus_infinity() : Degree(total.rbegin()->first);
}

/// Max of leibniz_degree over a few random points.
inline Degree leibniz_degdet(const Instance& inst, std::uint64_t seed, int trials = 3) {
  degdet::Rng rng(seed);
  Degree best = Degree::minus_infinity();
  for (int t = 0; t < trials; ++t) {
    std::vector<Residue> lambda(inst.m());
    for (auto& l : lambda) l = degdet::random_residue(rng, inst.modulus);
    best = std::max(best, leibniz_degree(inst, lambda));
  }
  return best;
}

inline Instance with_costs(Instance inst, std::vector<std::int64_t> costs) {
  inst.costs = std::move(costs);
  return inst;
}

}  // namespace testing_support
