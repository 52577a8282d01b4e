#include "doctest.h"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

#include "degdet/errors.hpp"
#include "degdet/instances.hpp"
#include "degdet/rational.hpp"

using namespace degdet;
using boost::multiprecision::cpp_int;

namespace {

/// ceil(log2 L) for L = (nd)^{2nd} D^{nd}, exactly.
std::int64_t exact_log2_ceiling(Index n, std::int64_t bound) {
  const Index d = std::max<Index>(1, n - 1);
  const auto nd = static_cast<unsigned>(n * d);
  const cpp_int l = boost::multiprecision::pow(cpp_int(nd), 2 * nd) * boost::multiprecision::pow(cpp_int(bound), nd);
  if (l == 1) return 0;
  const auto msb = static_cast<std::int64_t>(boost::multiprecision::msb(l));
  const bool power_of_two = (l & (l - 1)) == 0;
  return power_of_two ? msb : msb + 1;
}

IntegerInstance scalar(std::int64_t a, std::int64_t c) {
  IntegerInstance inst;
  inst.n = 1;
  inst.mats = {{a}};
  inst.costs = {c};
  return inst;
}

}  // namespace

TEST_CASE("bound_log2 examples") {
  CHECK(bound_log2(1, 1) >= 0);
  CHECK(bound_log2(1, 1) <= 2);
  CHECK(exact_log2_ceiling(2, 1) == 4);
  CHECK(bound_log2(2, 1) >= 4);
  CHECK(exact_log2_ceiling(3, 2) == 38);
  CHECK(bound_log2(3, 2) >= 38);
  CHECK(bound_log2(3, 2) <= 40);
  CHECK_THROWS_AS(bound_log2(0, 1), InvalidInstance);
}

TEST_CASE("first_primes examples") {
  CHECK(first_primes(1) == std::vector<std::uint64_t>{2});
  CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  const auto p38 = first_primes(38);
  CHECK(p38.size() == 38);
  CHECK(p38.back() == 163);
  for (auto p : first_primes(200)) CHECK(is_prime(p));
}

TEST_CASE("property: bound_log2 stays within two of the exact value") {
  for (Index n = 1; n <= 6; ++n)
    for (std::int64_t bound = 1; bound <= 9; ++bound) {
      const std::int64_t exact = exact_log2_ceiling(n, bound);
      CHECK(bound_log2(n, bound) >= exact);
      CHECK(bound_log2(n, bound) <= exact + 2);
    }
}

TEST_CASE("solve_rational examples") {
  RationalOptions opts;
  opts.primes = {2, 3};
  const RationalReport r = solve_rational(scalar(2, 5), opts);
  CHECK(r.value == Degree(5));
  REQUIRE(r.per_prime.size() == 2);
  CHECK(r.per_prime[0].value == Degree::minus_infinity());
  CHECK(r.per_prime[1].value == Degree(5));

  IntegerInstance id;
  id.n = 3;
  id.mats = {{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  id.costs = {4};
  id.entry_bound = 3;
  const RationalReport ri = solve_rational(id);
  CHECK(ri.value == Degree(12));
  for (const auto& o : ri.per_prime)
    if (o.prime > 2 && o.value) CHECK(*o.value == Degree(12));
}

TEST_CASE("property: per-prime values are lower bounds and the max is order-free") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const IntegerInstance inst = gen_integer(2 + static_cast<Index>(seed % 2), 3, 2, seed, {0, 30});
    const Degree direct = solve(inst.reduce(PrimeModulus())).value;
    const RationalReport r = solve_rational(inst);
    CHECK(r.value == direct);
    for (const auto& o : r.per_prime)
      if (o.value) CHECK(*o.value <= direct);
    RationalOptions shuffled;
    shuffled.primes = r.budget.primes;
    std::shuffle(shuffled.primes.begin(), shuffled.primes.end(), std::mt19937_64(seed));
    CHECK(solve_rational(inst, shuffled).value == r.value);
  }
}

TEST_CASE("small-prime retry budget") {
  CHECK(small_prime_retries(3, 2) == 3 * 3 * 129);
  CHECK(small_prime_retries(3, 1000003) == 9);
}
