#include "degdet/partitioned.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "degdet/errors.hpp"
#include "degdet/ncrank.hpp"

namespace degdet {

namespace {

/// Multiplicity grid X (row-major n x n) with row and column sums 2.
using MultiplicityGrid = std::vector<int>;

std::vector<MultiplicityGrid> perfect_grids(Index n, const std::vector<int>& max_mult) {
  std::vector<MultiplicityGrid> out;
  MultiplicityGrid x(static_cast<std::size_t>(n * n), 0);
  std::vector<int> col_left(static_cast<std::size_t>(n), 2);
  std::function<void(Index)> row = [&](Index i) {
    if (i == n) {
      out.push_back(x);
      return;
    }
    auto at = [&](Index j) { return static_cast<std::size_t>(i * n + j); };
    for (Index a = 0; a < n; ++a) {
      if (max_mult[at(a)] >= 2 && col_left[a] == 2) {
        x[at(a)] = 2;
        col_left[a] = 0;
        row(i + 1);
        col_left[a] = 2;
        x[at(a)] = 0;
      }
      if (max_mult[at(a)] < 1 || col_left[a] < 1) continue;
      for (Index b = a + 1; b < n; ++b) {
        if (max_mult[at(b)] < 1 || col_left[b] < 1) continue;
        x[at(a)] = x[at(b)] = 1;
        --col_left[a];
        --col_left[b];
        row(i + 1);
        ++col_left[a];
        ++col_left[b];
        x[at(a)] = x[at(b)] = 0;
      }
    }
  };
  row(0);
  return out;
}

TwoMatching to_matching(Index n, const MultiplicityGrid& x) {
  TwoMatching m;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (int k = x[static_cast<std::size_t>(i * n + j)]) m.edges.push_back({i, j, k});
  return m;
}

std::vector<int> multiplicity_caps(const PartitionedInstance& p) {
  std::vector<int> caps;
  for (const auto& b : p.blocks) caps.push_back(static_cast<int>(rank(b)));
  return caps;
}

/// Perfect 2-matchings on nonzero blocks, by weight descending.
std::vector<TwoMatching> candidates(const PartitionedInstance& p) {
  if (p.n > 5) throw SizeLimitExceeded("2-matching enumeration limited to n <= 5, got " + std::to_string(p.n));
  std::vector<TwoMatching> out;
  for (const auto& x : perfect_grids(p.n, multiplicity_caps(p))) out.push_back(to_matching(p.n, x));
  std::stable_sort(out.begin(), out.end(),
                   [&](const TwoMatching& a, const TwoMatching& b) { return a.weight(p) > b.weight(p); });
  return out;
}

FieldMatrix embed(const PartitionedInstance& p, Index i, Index j) {
  FieldMatrix a(p.modulus, 2 * p.n, 2 * p.n);
  a.set_block(2 * i, 2 * j, p.block(i, j));
  return a;
}

Index best_rank(const ConstPencil& pencil, std::uint64_t seed, int trials) {
  Rng rng(seed);
  Index best = 0;
  for (int t = 0; t < trials && best < pencil.n; ++t) best = std::max(best, random_substitution_rank(pencil, rng));
  return best;
}

/// A simple cycle split into its alternating halves.
struct Cycle {
  std::vector<std::pair<Index, Index>> first, second;
};

/// Doubled edges and simple cycles of a perfect 2-matching.
void decompose(const TwoMatching& m, Index n, std::vector<MatchingEdge>& doubled, std::vector<Cycle>& cycles) {
  std::vector<std::vector<Index>> row_adj(static_cast<std::size_t>(n)), col_adj(static_cast<std::size_t>(n));
  for (const auto& e : m.edges) {
    if (e.multiplicity == 2) {
      doubled.push_back(e);
      continue;
    }
    row_adj[e.i].push_back(e.j);
    col_adj[e.j].push_back(e.i);
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index start = 0; start < n; ++start) {
    if (seen[start] || row_adj[start].empty()) continue;
    Cycle c;
    Index i = start, prev_j = -1;
    for (;;) {
      seen[i] = true;
      const Index j = row_adj[i][0] != prev_j ? row_adj[i][0] : row_adj[i][1];
      c.first.emplace_back(i, j);
      const Index next_i = col_adj[j][0] != i ? col_adj[j][0] : col_adj[j][1];
      c.second.emplace_back(next_i, j);
      prev_j = j;
      i = next_i;
      if (i == start) break;
    }
    cycles.push_back(std::move(c));
  }
}

std::int64_t half_weight(const PartitionedInstance& p, const std::vector<std::pair<Index, Index>>& half) {
  std::int64_t w = 0;
  for (auto [i, j] : half) w += p.cost(i, j);
  return w;
}

bool all_rank2(const PartitionedInstance& p, const std::vector<std::pair<Index, Index>>& half) {
  return std::all_of(half.begin(), half.end(), [&](auto e) { return rank(p.block(e.first, e.second)) == 2; });
}

/// Option 0 keeps the cycle, 1 and 2 double a half.
TwoMatching assemble(const std::vector<MatchingEdge>& doubled, const std::vector<Cycle>& cycles,
                     const std::vector<int>& choice) {
  TwoMatching m;
  m.edges = doubled;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    if (choice[c] == 0) {
      for (auto [i, j] : cycles[c].first) m.edges.push_back({i, j, 1});
      for (auto [i, j] : cycles[c].second) m.edges.push_back({i, j, 1});
    } else {
      for (auto [i, j] : choice[c] == 1 ? cycles[c].first : cycles[c].second) m.edges.push_back({i, j, 2});
    }
  }
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

}  // namespace

Index TwoMatching::size() const {
  Index s = 0;
  for (const auto& e : edges) s += e.multiplicity;
  return s;
}

bool TwoMatching::is_valid(Index n) const {
  std::vector<int> rows(static_cast<std::size_t>(n)), cols(static_cast<std::size_t>(n));
  for (const auto& e : edges) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.multiplicity < 1 || e.multiplicity > 2) return false;
    if ((rows[e.i] += e.multiplicity) > 2 || (cols[e.j] += e.multiplicity) > 2) return false;
  }
  return true;
}

bool TwoMatching::is_perfect(Index n) const { return is_valid(n) && size() == 2 * n; }

std::int64_t TwoMatching::weight(const PartitionedInstance& p) const {
  std::int64_t w = 0;
  for (const auto& e : edges) w += e.multiplicity * p.cost(e.i, e.j);
  return w;
}

std::vector<std::pair<Index, Index>> nonzero_cells(const PartitionedInstance& p) {
  std::vector<std::pair<Index, Index>> cells;
  for (Index i = 0; i < p.n; ++i)
    for (Index j = 0; j < p.n; ++j)
      if (!p.block(i, j).is_zero()) cells.emplace_back(i, j);
  return cells;
}

Instance to_instance(const PartitionedInstance& p) {
  p.validate();
  Instance inst;
  inst.modulus = p.modulus;
  inst.n = 2 * p.n;
  for (auto [i, j] : nonzero_cells(p)) {
    inst.mats.push_back(embed(p, i, j));
    inst.costs.push_back(p.cost(i, j));
  }
  if (inst.mats.empty()) throw InvalidInstance("every block is zero");
  inst.meta = p.meta;
  return inst;
}

bool is_consistent(const TwoMatching& m, const PartitionedInstance& p, std::uint64_t seed) {
  p.validate();
  if (!m.is_valid(p.n)) return false;
  if (m.edges.empty()) return true;
  std::vector<FieldMatrix> mats;
  for (const auto& e : m.edges) mats.push_back(embed(p, e.i, e.j));
  return best_rank(ConstPencil(2 * p.n, std::move(mats)), seed, 2) == m.size();
}

EnumerationResult enumerate_perfect(const PartitionedInstance& p, std::uint64_t seed) {
  p.validate();
  for (const auto& m : candidates(p))
    if (is_consistent(m, p, seed)) return {Degree(m.weight(p)), m};
  return {Degree::minus_infinity(), std::nullopt};
}

Extraction solve_and_extract(const PartitionedInstance& p, const SolveOptions& opts) {
  SolveOptions so = opts;
  so.keep_leading = true;
  so.block_size = 2;
  const Instance inst = to_instance(p);
  Extraction out{Degree::minus_infinity(), std::nullopt, solve(inst, so), false};
  out.value = out.report.value;
  if (!out.value.is_finite()) return out;
  if (out.report.final_leading.size() != inst.m())
    throw ExtractionFailed("no final leading pencil (blow-up fallback was used)");

  const auto cells = nonzero_cells(p);
  std::vector<std::size_t> term_of(static_cast<std::size_t>(p.n * p.n));
  for (std::size_t k = 0; k < cells.size(); ++k) term_of[cells[k].first * p.n + cells[k].second] = k;

  // A perfect 2-matching whose support keeps the leading pencil nonsingular.
  std::optional<TwoMatching> found;
  for (const auto& m : candidates(p)) {
    std::vector<FieldMatrix> restricted;
    for (const auto& e : m.edges) restricted.push_back(out.report.final_leading[term_of[e.i * p.n + e.j]]);
    if (best_rank(ConstPencil(inst.n, std::move(restricted)), mix_seed(opts.seed, 0x2a2), 2) == inst.n) {
      found = m;
      break;
    }
  }
  if (!found) throw ExtractionFailed("no perfect 2-matching keeps the final leading pencil nonsingular");

  std::vector<MatchingEdge> doubled;
  std::vector<Cycle> cycles;
  decompose(*found, p.n, doubled, cycles);
  std::vector<int> choice(cycles.size(), 0);
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const std::int64_t whole = half_weight(p, cycles[c].first) + half_weight(p, cycles[c].second);
    for (int kappa = 1; kappa <= 2; ++kappa) {
      const auto& half = kappa == 1 ? cycles[c].first : cycles[c].second;
      if (all_rank2(p, half) && 2 * half_weight(p, half) >= whole) {
        choice[c] = kappa;
        break;
      }
    }
  }
  const std::uint64_t check_seed = mix_seed(opts.seed, 0xc0);
  auto accept = [&](const TwoMatching& m) {
    return m.weight(p) == out.value.value() && is_consistent(m, p, check_seed);
  };
  TwoMatching m = assemble(doubled, cycles, choice);
  if (!accept(m)) {
    // Cycle halves whose monomials cancel can defeat the weight rule; try every
    // per-cycle option.
    out.rule_fallback = true;
    bool ok = false;
    std::vector<int> alt(cycles.size(), 0);
    for (;;) {
      bool feasible = true;
      for (std::size_t c = 0; c < cycles.size() && feasible; ++c)
        if (alt[c] != 0) feasible = all_rank2(p, alt[c] == 1 ? cycles[c].first : cycles[c].second);
      if (feasible) {
        m = assemble(doubled, cycles, alt);
        if (accept(m)) {
          ok = true;
          break;
        }
      }
      std::size_t c = 0;
      while (c < alt.size() && alt[c] == 2) alt[c++] = 0;
      if (c == alt.size()) break;
      ++alt[c];
    }
    if (!ok) throw ExtractionFailed("no simplification of the leading-pencil matching has weight " + out.value.to_string());
  }
  out.matching = std::move(m);
  return out;
}

}  // namespace degdet
