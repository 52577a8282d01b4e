#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degdet/degdet.hpp"
#include "degdet/instance.hpp"

namespace degdet {

/// An integer >= ceil(log2 L) for L = (nd)^{2nd} D^{nd}, d = max(1, n - 1);
/// overshoots by at most 2.
std::int64_t bound_log2(Index n, std::int64_t entry_bound);

/// The `count` smallest primes, ascending.
std::vector<std::uint64_t> first_primes(std::size_t count);

struct PrimeBudget {
  Index d = 1;
  std::int64_t log2_bound = 0;
  std::size_t ell = 0;
  std::vector<std::uint64_t> primes;
};

PrimeBudget prime_budget(Index n, std::int64_t entry_bound);

struct RationalOptions {
  SolveOptions solve;
  /// Overrides the budget's prime list when nonempty.
  std::vector<std::uint64_t> primes;
};

struct PrimeOutcome {
  std::uint64_t prime = 0;
  std::optional<Degree> value;  ///< empty when skipped
  std::string method;           ///< "core", "blowup" or "skipped"
  std::string skip_reason;
};

struct RationalReport {
  Degree value;
  PrimeBudget budget;
  /// Ordered by prime.
  std::vector<PrimeOutcome> per_prime;
  std::size_t skipped = 0;
};

/// Attempts per (R) call over GF(p): 3n (1 + 256 / p).
int small_prime_retries(Index n, std::uint64_t p);

/// max over the budget primes of deg Det A_(p)[c]. A prime whose solve and
/// blow-up fallback both fail is skipped; the last failure is rethrown only
/// when every prime is skipped.
RationalReport solve_rational(const IntegerInstance& inst, const RationalOptions& opts = {});

}  // namespace degdet
