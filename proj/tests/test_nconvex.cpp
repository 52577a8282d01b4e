#include "doctest.h"

#include <random>

#include "degdet/errors.hpp"
#include "degdet/nconvex.hpp"

using namespace degdet::nconvex;

namespace {

LatticePoint pt(std::initializer_list<std::int64_t> v) {
  LatticePoint x(static_cast<Index>(v.size()));
  Index i = 0;
  for (auto c : v) x[i++] = c;
  return x;
}

}  // namespace

TEST_CASE("step_to examples") {
  CHECK(step_to(pt({0, 0}), pt({2, 1})) == pt({1, 1}));
  CHECK(step_to(pt({4, -1}), pt({4, -1})) == pt({4, -1}));
  CHECK(step_to(pt({0, 0}), pt({-2, 3})) == pt({-1, 1}));
  CHECK_THROWS_AS(step_to(pt({0}), pt({0, 0})), degdet::DimensionMismatch);
}

TEST_CASE("far_step examples") {
  CHECK(far_step(pt({0, 0}), pt({2, 1})) == pt({1, 1}));
  CHECK(far_step(pt({0}), pt({3})) == pt({2}));
  CHECK(far_step(pt({1, 1}), pt({0, 0})) == pt({1, 1}));
  CHECK_THROWS(far_step(pt({1, 2}), pt({1, 2})));
}

TEST_CASE("normal_path examples") {
  const auto p = normal_path(pt({0, 0}), pt({2, 1}));
  REQUIRE(p.size() == 3);
  CHECK(p[0] == pt({0, 0}));
  CHECK(p[1] == pt({1, 1}));
  CHECK(p[2] == pt({2, 1}));
  CHECK(normal_path(pt({5}), pt({5})).size() == 1);
  const auto q = normal_path(pt({0}), pt({-3}));
  REQUIRE(q.size() == 4);
  CHECK(q[3] == pt({-3}));
}

TEST_CASE("check_pair examples") {
  Eigen::VectorXd a(2);
  a << 3.0, -2.0;
  const auto lin = affine(a, 1.5);
  CHECK(check_pair(lin, pt({1, 7}), pt({-4, 2})));
  const auto mx = max_sum_zero(2, 0, 1);
  CHECK(check_pair(mx, pt({3, -5}), pt({-2, 4})));
  const DiscreteFunction neg_abs{1, [](const LatticePoint& x) { return -static_cast<double>(std::abs(x[0])); }};
  CHECK_FALSE(check_pair(neg_abs, pt({-1}), pt({1})));
}

TEST_CASE("infinite values") {
  const DiscreteFunction wall{1, [](const LatticePoint& x) { return x[0] > 0 ? kInfinity : 0.0; }};
  // inf on the left counts as satisfied, inf only on the right fails.
  CHECK(check_pair(wall, pt({2}), pt({-2})));
  const DiscreteFunction spike{1, [](const LatticePoint& x) { return x[0] == 0 ? kInfinity : 0.0; }};
  CHECK_FALSE(check_pair(spike, pt({-1}), pt({1})));
}

TEST_CASE("barrier examples") {
  BarrierSpec none{3, 7.0, {}};
  const auto h0 = barrier(none);
  CHECK(h0(pt({1, 2, 3, -1, 0, 4})) == doctest::Approx(-9.0));
  BarrierSpec one{2, 10.0, {{0, 0, 0, 0}}};
  const auto h1 = barrier(one);
  CHECK(h1(pt({0, 0, 0, 0})) == 0.0);
  CHECK(h1(pt({1, 0, 0, 0})) == 9.0);
  CHECK_THROWS_AS(barrier(BarrierSpec{2, 0.0, {}}), degdet::InvalidInstance);
  CHECK_THROWS_AS(barrier(BarrierSpec{2, 1.0, {{2, 0, 0, 0}}}), degdet::InvalidInstance);
}

TEST_CASE("property: step distances and path lengths") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::int64_t> c(-8, 8);
  for (int t = 0; t < 2000; ++t) {
    LatticePoint x(4), y(4);
    for (Index i = 0; i < 4; ++i) {
      x[i] = c(rng);
      y[i] = c(rng);
    }
    const auto d = linf_distance(x, y);
    CHECK(linf_distance(step_to(x, y), y) == std::max<std::int64_t>(d - 1, 0));
    const auto path = normal_path(x, y);
    CHECK(static_cast<std::int64_t>(path.size()) == d + 1);
    if (d > 0) CHECK(far_step(x, y) == path[path.size() - 2]);
  }
}

TEST_CASE("box_minimizer finds the exhaustive minimum") {
  BarrierSpec spec{1, 5.0, {{0, 0, 0, -1}}};
  const auto h = barrier(spec);
  const LatticePoint z = box_minimizer(h, {-2, 2});
  // x + y <= 1 with both pushed up: the optimum sits on the constraint.
  CHECK(z.sum() == 1);
  CHECK(h(z) == -1.0);
}
