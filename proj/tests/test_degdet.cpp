#include "doctest.h"

#include "degdet/degdet.hpp"
#include "degdet/errors.hpp"
#include "degdet/instances.hpp"
#include "degdet/oracles.hpp"
#include "support.hpp"

using namespace degdet;

namespace {

const PrimeModulus kMod;

Instance scalar_instance(Residue a, std::int64_t c) {
  Instance inst;
  inst.n = 1;
  inst.mats = {FieldMatrix::from_integers(kMod, 1, 1, std::vector<std::int64_t>{static_cast<std::int64_t>(a)})};
  inst.costs = {c};
  return inst;
}

}  // namespace

TEST_CASE("normalize_costs examples") {
  CHECK(normalize_costs({5}) == std::pair<std::vector<std::int64_t>, std::int64_t>{{5}, 0});
  CHECK(normalize_costs({0, -3}) == std::pair<std::vector<std::int64_t>, std::int64_t>{{4, 1}, 4});
  CHECK(normalize_costs({1, 1}) == std::pair<std::vector<std::int64_t>, std::int64_t>{{1, 1}, 0});
}

TEST_CASE("run_phase examples") {
  SolveOptions opts;
  const auto id = FieldMatrix::identity(kMod, 2);
  const LaurentPencil optimal({LaurentMatrix::monomial(id, 0)});
  auto r0 = run_phase(optimal, 7, opts);
  CHECK(r0.iterations == 1);
  CHECK(r0.dstar == 7);

  const LaurentPencil scalar({LaurentMatrix::monomial(FieldMatrix::identity(kMod, 1), 0)});
  auto r1 = run_phase(scalar, 1, opts);
  CHECK(r1.iterations == 1);
  CHECK(r1.dstar == 1);

  // {E11 t^0, E22 t^-1}: one improving certificate, then optimal.
  const LaurentPencil bip({LaurentMatrix::monomial(FieldMatrix::unit(kMod, 2, 2, 0, 0), 0),
                           LaurentMatrix::monomial(FieldMatrix::unit(kMod, 2, 2, 1, 1), -1)});
  auto r2 = run_phase(bip, 10, opts);
  CHECK(r2.iterations == 2);
  CHECK(r2.dstar == 9);
}

TEST_CASE("solve examples") {
  CHECK(solve(scalar_instance(3, 5)).value == Degree(5));
  CHECK(solve(identity_instance(3, 4)).value == Degree(12));
  CHECK(solve(gen_bipartite(bipartite_fixture3())).value == Degree(8));
  const SolveReport skew = solve(skew3({0, 0, 0}));
  CHECK(skew.value == Degree(0));
  CHECK_FALSE(skew.fallback_used);
  CHECK(skew.gap_resolutions >= 1);
  CHECK(degdet_commutative(skew3(), 1) == Degree::minus_infinity());
}

TEST_CASE("nc-singular instances give minus infinity") {
  WeightGrid single(2, std::vector<std::optional<std::int64_t>>(2));
  single[0][0] = 3;
  CHECK(solve(gen_bipartite(single)).value == Degree::minus_infinity());
  Instance zero;
  zero.n = 2;
  zero.mats = {FieldMatrix(kMod, 2, 2)};
  zero.costs = {1};
  CHECK(solve(zero).value == Degree::minus_infinity());
}

TEST_CASE("report shape") {
  const Instance inst = gen_bipartite(bipartite_fixture3());
  const SolveReport r = solve(inst);
  // Costs become 1..4, so N = 2 and three phases run.
  CHECK(r.shift_applied == 1);
  CHECK(r.phases == 3);
  CHECK(r.iterations.size() == 3);
  CHECK(r.iterations[0] == 1);
  CHECK(r.dstar_trace.back() - 3 * r.shift_applied == 8);
  CHECK(r.truncation_depth == 2 * 9 * 9);
  for (auto it : r.iterations) CHECK(it <= iteration_bound(3, inst.m()));
}

TEST_CASE("invalid truncation depth and instance shape") {
  SolveOptions opts;
  opts.truncation_depth = 0;
  CHECK_THROWS_AS(solve(identity_instance(2, 1), opts), InvalidInstance);
  Instance bad;
  bad.n = 2;
  CHECK_THROWS_AS(solve(bad), InvalidInstance);
}

TEST_CASE("iteration bound can be tightened to force an error or a warning") {
  const Instance inst = gen_bipartite(random_weights(5, 0.8, {-50, 50}, 3));
  SolveOptions tight;
  tight.max_phase_iterations = 1;
  const SolveReport ref = solve(inst);
  bool improved = false;
  for (auto it : ref.iterations) improved |= it > 1;
  if (improved) {
    CHECK_THROWS_AS(solve(inst, tight), IterationBoundExceeded);
    tight.bound_check = BoundCheck::warn;
    const SolveReport warned = solve(inst, tight);
    CHECK(warned.value == ref.value);
    CHECK(warned.bound_warnings >= 1);
  }
}

TEST_CASE("solve matches Leibniz expansion on small random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 4);
    const Instance inst = gen_rank1(n, static_cast<std::size_t>(n + seed % 3), seed, {-20, 20});
    // Rank-1 terms have deg Det = deg det.
    CHECK(solve(inst).value == testing_support::leibniz_degdet(inst, seed));
  }
}

TEST_CASE("rank-1 generator examples") {
  const Instance one = gen_rank1(1, 4, 9, {-5, 30});
  std::int64_t best = one.costs[0];
  for (auto c : one.costs) best = std::max(best, c);
  CHECK(solve(one).value == Degree(best));
  Instance diag;
  diag.n = 3;
  for (Index k = 0; k < 3; ++k) diag.mats.push_back(FieldMatrix::unit(kMod, 3, 3, k, k));
  diag.costs = {4, -2, 9};
  CHECK(solve(diag).value == Degree(11));
}

TEST_CASE("property: seeded solves are reproducible") {
  const Instance inst = gen_dense(3, 4, 11, {-30, 30}, 2);
  SolveOptions a;
  a.seed = 99;
  const SolveReport r1 = solve(inst, a), r2 = solve(inst, a);
  CHECK(r1.value == r2.value);
  CHECK(r1.dstar_trace == r2.dstar_trace);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.oracle_calls == r2.oracle_calls);
}

TEST_CASE("property: commutative degree never exceeds solve") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Index n = 2 + static_cast<Index>(seed % 3);
    const Instance inst = gen_dense(n, 3 + seed % 3, seed, {-15, 15}, 1 + static_cast<Index>(seed % 2));
    CHECK(degdet_commutative(inst, seed, 1) <= solve(inst).value);
  }
}
