#include "degdet/rational.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "degdet/errors.hpp"
#include "degdet/oracles.hpp"

namespace degdet {

std::int64_t bound_log2(Index n, std::int64_t entry_bound) {
  if (n < 1 || entry_bound < 1) throw InvalidInstance("bound_log2 needs n >= 1 and D >= 1");
  const double nd = static_cast<double>(n * blowup_order(n));
  // The +1 absorbs rounding of the floating-point logarithms.
  return static_cast<std::int64_t>(std::ceil(nd * (2.0 * std::log2(nd) + std::log2(static_cast<double>(entry_bound))))) + 1;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::size_t limit = 16;
  for (;;) {
    std::vector<bool> composite(limit + 1);
    std::vector<std::uint64_t> primes;
    for (std::size_t i = 2; i <= limit && primes.size() < count; ++i) {
      if (composite[i]) continue;
      primes.push_back(i);
      for (std::size_t k = i * i; k <= limit; k += i) composite[k] = true;
    }
    if (primes.size() >= count) return primes;
    limit *= 2;
  }
}

PrimeBudget prime_budget(Index n, std::int64_t entry_bound) {
  PrimeBudget b;
  b.d = blowup_order(n);
  b.log2_bound = bound_log2(n, entry_bound);
  b.ell = static_cast<std::size_t>(std::max<std::int64_t>(b.log2_bound, 1));
  b.primes = first_primes(b.ell);
  return b;
}

int small_prime_retries(Index n, std::uint64_t p) {
  return static_cast<int>(3 * std::max<Index>(n, 1) * static_cast<Index>(1 + 256 / p));
}

RationalReport solve_rational(const IntegerInstance& inst, const RationalOptions& opts) {
  inst.validate();
  RationalReport report;
  report.budget = prime_budget(inst.n, inst.effective_bound());
  std::vector<std::uint64_t> primes = opts.primes.empty() ? report.budget.primes : opts.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

  std::exception_ptr last_failure;
  std::optional<Degree> best;
  for (std::uint64_t p : primes) {
    const PrimeModulus mod(p);
    const Instance reduced = inst.reduce(mod);
    PrimeOutcome out{p, std::nullopt, "core", ""};
    SolveOptions so = opts.solve;
    so.blowup_fallback = false;
    so.oracle_retries = small_prime_retries(inst.n, p);
    so.seed = mix_seed(opts.solve.seed, p);
    try {
      out.value = solve(reduced, so).value;
    } catch (const Error& core_err) {
      try {
        out.value = degdet_blowup(reduced, so.seed);
        out.method = "blowup";
      } catch (const Error& e) {
        out.method = "skipped";
        out.skip_reason = std::string(core_err.name()) + "; " + e.name() + ": " + e.what();
        last_failure = std::current_exception();
      }
    }
    if (out.value) best = best ? std::max(*best, *out.value) : *out.value;
    else ++report.skipped;
    report.per_prime.push_back(std::move(out));
  }
  if (!best) {
    if (last_failure) std::rethrow_exception(last_failure);
    throw InvalidInstance("empty prime list");
  }
  report.value = *best;
  return report;
}

}  // namespace degdet
