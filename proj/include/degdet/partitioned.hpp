#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "degdet/degdet.hpp"
#include "degdet/instance.hpp"

namespace degdet {

struct MatchingEdge {
  Index i = 0;
  Index j = 0;
  int multiplicity = 1;  ///< 1 or 2

  friend bool operator==(const MatchingEdge&, const MatchingEdge&) = default;
  friend auto operator<=>(const MatchingEdge&, const MatchingEdge&) = default;
};

/// Multiset of bipartite edges, kept sorted by (i, j).
struct TwoMatching {
  std::vector<MatchingEdge> edges;

  /// |M| counting multiplicity.
  Index size() const;
  /// Every node meets total multiplicity <= 2.
  bool is_valid(Index n) const;
  /// Every node meets total multiplicity exactly 2.
  bool is_perfect(Index n) const;
  /// c(M); a doubled edge counts twice.
  std::int64_t weight(const PartitionedInstance& p) const;

  friend bool operator==(const TwoMatching&, const TwoMatching&) = default;
};

/// Cells (i, j) with a nonzero block, row-major; term k of to_instance is cell k.
std::vector<std::pair<Index, Index>> nonzero_cells(const PartitionedInstance& p);

/// One 2n x 2n term per nonzero block. Throws InvalidInstance if all blocks are zero.
Instance to_instance(const PartitionedInstance& p);

/// rank A_M = |M| at a random point (false negatives with probability <= 2n/p).
bool is_consistent(const TwoMatching& m, const PartitionedInstance& p, std::uint64_t seed);

struct EnumerationResult {
  Degree best_weight;
  std::optional<TwoMatching> witness;
};

/// Exhaustive search over perfect 2-matchings on nonzero blocks; n <= 5.
EnumerationResult enumerate_perfect(const PartitionedInstance& p, std::uint64_t seed = 1);

struct Extraction {
  Degree value;
  std::optional<TwoMatching> matching;  ///< empty when value is MINUS_INFINITY
  SolveReport report;
  /// The per-cycle weight rule missed and an exhaustive choice of cycle options was needed.
  bool rule_fallback = false;
};

/// Solves to_instance(p), then reads a maximum-weight perfect A-consistent
/// 2-matching off the final leading pencil. Throws ExtractionFailed when no
/// support of a perfect 2-matching keeps that pencil nonsingular, or when
/// the cycle-simplified matching does not check out.
Extraction solve_and_extract(const PartitionedInstance& p, const SolveOptions& opts = {});

}  // namespace degdet
