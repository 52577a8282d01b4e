#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/laurent.hpp"
#include "degdet/ncrank.hpp"

namespace degdet {

enum class BoundCheck { error, warn, off };

struct SolveOptions {
  std::uint64_t seed = 1;
  bool scaling_enabled = true;
  /// Drop low-degree coefficients during scaling.
  bool truncate = true;
  /// Truncation depth; 2 n^2 m when unset.
  std::optional<std::int64_t> truncation_depth;
  /// Per-phase limit on oracle calls; n^2 m + 1 when unset.
  std::optional<std::int64_t> max_phase_iterations;
  BoundCheck bound_check = BoundCheck::error;
  /// Attempts per (R) call; 3n when unset.
  std::optional<int> oracle_retries;
  /// On an unresolvable NcRankGap, report the blow-up value instead of failing.
  bool blowup_fallback = true;
  /// Count certificates that are not block diagonal with this block size (0 = off).
  Index block_size = 0;
  /// Keep the final pencil's degree-0 coefficients in the report.
  bool keep_leading = false;
};

struct SolveReport {
  Degree value;
  /// D* at the end of each phase (shifted costs).
  std::vector<std::int64_t> dstar_trace;
  /// Oracle executions per phase, including the final optimality check.
  std::vector<std::int64_t> iterations;
  std::int64_t phases = 0;
  std::int64_t oracle_calls = 0;
  /// b added to every cost before scaling.
  std::int64_t shift_applied = 0;
  std::int64_t truncation_depth = 0;  ///< 0 when disabled
  /// Oracle gaps closed by the blow-up nc-nonsingularity test.
  std::int64_t gap_resolutions = 0;
  bool fallback_used = false;
  std::int64_t non_block_certificates = 0;
  std::int64_t bound_warnings = 0;
  std::vector<double> phase_ms;
  std::vector<FieldMatrix> final_leading;
};

/// b = max(0, 1 - min c) and costs + b.
std::pair<std::vector<std::int64_t>, std::int64_t> normalize_costs(const std::vector<std::int64_t>& costs);

/// Iteration limit n^2 m + 1 used by the bound assertion.
std::int64_t iteration_bound(Index n, std::size_t m);

struct PhaseResult {
  LaurentPencil pencil;
  std::int64_t dstar = 0;
  std::int64_t iterations = 0;
};

/// Mutable bookkeeping threaded through the oracle calls of one solve.
struct PhaseStats {
  std::uint64_t seed = 1;
  std::int64_t oracle_calls = 0;
  std::int64_t gap_resolutions = 0;
  std::int64_t non_block_certificates = 0;
  std::int64_t bound_warnings = 0;
};

/// Deg-Det on B_k form: call the (R) oracle on the leading pencil and update
/// B_k until the optimum is n. `limit` <= 0 disables the iteration bound.
PhaseResult run_phase(LaurentPencil pencil, std::int64_t dstar, const SolveOptions& opts, std::int64_t limit,
                      std::optional<std::int64_t> truncation, PhaseStats& stats);
PhaseResult run_phase(LaurentPencil pencil, std::int64_t dstar, const SolveOptions& opts);

/// deg Det A[c]. MINUS_INFINITY iff the pencil is nc-singular.
SolveReport solve(const Instance& inst, const SolveOptions& opts = {});

}  // namespace degdet
