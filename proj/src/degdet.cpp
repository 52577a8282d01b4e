#include "degdet/degdet.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>

#include "degdet/errors.hpp"
#include "degdet/oracles.hpp"

namespace degdet {

namespace {

bool is_block_diagonal(const FieldMatrix& m, Index block) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i / block != j / block && m(i, j) != 0) return false;
  return true;
}

std::int64_t ceil_shift(std::int64_t c, int k) {
  return k == 0 ? c : (c + (std::int64_t{1} << k) - 1) >> k;
}

int ceil_log2(std::int64_t c) {
  int k = 0;
  while ((std::int64_t{1} << k) < c) ++k;
  return k;
}

std::int64_t default_depth(Index n, std::size_t m) { return 2 * n * n * static_cast<std::int64_t>(m); }

// Decides nc-singularity of sum_k A_k x_k. A certificate of value < n proves
// singularity; a gap is settled by the blow-up test.
bool nc_singular(const Instance& inst, int retries, PhaseStats& stats) {
  const ConstPencil base(inst.n, inst.mats);
  ++stats.oracle_calls;
  try {
    return solve_R(base, mix_seed(stats.seed, 0), retries).value < inst.n;
  } catch (const NcRankGap&) {
    ++stats.gap_resolutions;
    return !is_nc_nonsingular(base, mix_seed(stats.seed, ~std::uint64_t{0}));
  }
}

}  // namespace

std::pair<std::vector<std::int64_t>, std::int64_t> normalize_costs(const std::vector<std::int64_t>& costs) {
  if (costs.empty()) return {{}, 0};
  const std::int64_t lo = *std::min_element(costs.begin(), costs.end());
  const std::int64_t b = std::max<std::int64_t>(0, 1 - lo);
  std::vector<std::int64_t> shifted(costs);
  for (auto& c : shifted) c += b;
  return {shifted, b};
}

std::int64_t iteration_bound(Index n, std::size_t m) { return n * n * static_cast<std::int64_t>(m) + 1; }

PhaseResult run_phase(LaurentPencil pencil, std::int64_t dstar, const SolveOptions& opts, std::int64_t limit,
                      std::optional<std::int64_t> truncation, PhaseStats& stats) {
  const Index n = pencil.dim();
  const int retries = opts.oracle_retries.value_or(default_retries(n));
  std::int64_t iterations = 0;
  bool warned = false;
  for (;;) {
    ++iterations;
    if (limit > 0 && iterations > limit && opts.bound_check != BoundCheck::off) {
      if (opts.bound_check == BoundCheck::error)
        throw IterationBoundExceeded("phase needed more than " + std::to_string(limit) + " oracle calls");
      if (!warned) {
        std::fprintf(stderr, "warning: phase exceeded %lld oracle calls\n", static_cast<long long>(limit));
        ++stats.bound_warnings;
        warned = true;
      }
    }
    const ConstPencil lead(n, leading(pencil));
    ++stats.oracle_calls;
    Certificate cert;
    try {
      cert = solve_R(lead, mix_seed(stats.seed, static_cast<std::uint64_t>(stats.oracle_calls)), retries);
    } catch (const NcRankGap&) {
      // Optimality only needs nc-rank n, which the blow-up can confirm.
      if (is_nc_nonsingular(lead, mix_seed(~stats.seed, static_cast<std::uint64_t>(stats.oracle_calls)))) {
        ++stats.gap_resolutions;
        break;
      }
      throw;
    }
    if (cert.value == n) break;
    if (opts.block_size > 0 &&
        !(is_block_diagonal(cert.left, opts.block_size) && is_block_diagonal(cert.right, opts.block_size)))
      ++stats.non_block_certificates;
    pencil = step_update(pencil, cert.left, cert.right, cert.r, cert.s);
    if (truncation) pencil = truncate(pencil, *truncation);
    dstar += n - cert.r - cert.s;
  }
  return PhaseResult{std::move(pencil), dstar, iterations};
}

PhaseResult run_phase(LaurentPencil pencil, std::int64_t dstar, const SolveOptions& opts) {
  PhaseStats stats;
  stats.seed = opts.seed;
  const Index n = pencil.dim();
  const std::int64_t limit = opts.max_phase_iterations.value_or(iteration_bound(n, pencil.size()));
  std::optional<std::int64_t> depth;
  if (opts.truncate) depth = opts.truncation_depth.value_or(default_depth(n, pencil.size()));
  return run_phase(std::move(pencil), dstar, opts, limit, depth, stats);
}

SolveReport solve(const Instance& inst, const SolveOptions& opts) {
  inst.validate();
  if (opts.truncation_depth && *opts.truncation_depth < 1)
    throw InvalidInstance("truncation depth must be at least 1");
  const Index n = inst.n;
  const std::size_t m = inst.m();
  const int retries = opts.oracle_retries.value_or(default_retries(n));
  SolveReport report;
  PhaseStats stats;
  stats.seed = opts.seed;
  auto finish = [&](SolveReport& r) {
    r.oracle_calls = stats.oracle_calls;
    r.gap_resolutions = stats.gap_resolutions;
    r.non_block_certificates = stats.non_block_certificates;
    r.bound_warnings = stats.bound_warnings;
    return r;
  };

  if (opts.scaling_enabled && opts.truncate) report.truncation_depth = opts.truncation_depth.value_or(default_depth(n, m));
  if (nc_singular(inst, retries, stats)) {
    report.value = Degree::minus_infinity();
    return finish(report);
  }

  using clock = std::chrono::steady_clock;
  auto record = [&](const PhaseResult& ph, clock::time_point start) {
    report.dstar_trace.push_back(ph.dstar);
    report.iterations.push_back(ph.iterations);
    report.phase_ms.push_back(std::chrono::duration<double, std::milli>(clock::now() - start).count());
    ++report.phases;
  };

  try {
    if (!opts.scaling_enabled) {
      // (P, Q) = (t^{-cmax} I, I): B_k = A_k t^{c_k - cmax}, D* = n cmax.
      const std::int64_t cmax = *std::max_element(inst.costs.begin(), inst.costs.end());
      std::vector<LaurentMatrix> terms;
      for (std::size_t k = 0; k < m; ++k) terms.push_back(LaurentMatrix::monomial(inst.mats[k], inst.costs[k] - cmax));
      const auto start = clock::now();
      auto ph = run_phase(LaurentPencil(std::move(terms)), n * cmax, opts, opts.max_phase_iterations.value_or(0),
                          std::nullopt, stats);
      record(ph, start);
      report.value = Degree(ph.dstar);
      if (opts.keep_leading) report.final_leading = leading(ph.pencil);
      return finish(report);
    }

    const auto [costs, b] = normalize_costs(inst.costs);
    report.shift_applied = b;
    const std::int64_t cmax = *std::max_element(costs.begin(), costs.end());
    const int big_n = ceil_log2(cmax);
    std::optional<std::int64_t> depth;
    if (opts.truncate) depth = opts.truncation_depth.value_or(default_depth(n, m));
    report.truncation_depth = depth.value_or(0);
    const std::int64_t limit = opts.max_phase_iterations.value_or(iteration_bound(n, m));

    // Phase 0: every c^(0)_k = 1 and (P, Q) = (t^{-1} I, I), so B_k = A_k.
    std::vector<LaurentMatrix> terms;
    for (const auto& a : inst.mats) terms.push_back(LaurentMatrix::monomial(a, 0));
    LaurentPencil pencil(std::move(terms));
    std::int64_t dstar = n;
    for (int theta = 0;; ++theta) {
      const auto start = clock::now();
      auto ph = run_phase(std::move(pencil), dstar, opts, limit, depth, stats);
      record(ph, start);
      pencil = std::move(ph.pencil);
      dstar = ph.dstar;
      if (theta == big_n) break;
      std::vector<LaurentMatrix> next;
      next.reserve(m);
      for (std::size_t k = 0; k < m; ++k) {
        const std::int64_t cur = ceil_shift(costs[k], big_n - theta);
        const std::int64_t nxt = ceil_shift(costs[k], big_n - theta - 1);
        LaurentMatrix sq = square_substitute(pencil.term(k));
        next.push_back(nxt == 2 * cur ? std::move(sq) : scale_tinv(sq));
      }
      pencil = LaurentPencil(std::move(next));
      if (depth) pencil = truncate(pencil, *depth);
      dstar *= 2;
    }
    report.value = Degree(dstar - n * b);
    if (opts.keep_leading) report.final_leading = leading(pencil);
  } catch (const NcRankGap&) {
    if (!opts.blowup_fallback) throw;
    report.value = degdet_blowup(inst, mix_seed(opts.seed, 0xb10b));
    report.fallback_used = true;
  }
  return finish(report);
}

}  // namespace degdet
