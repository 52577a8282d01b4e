#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace degdet::nconvex {

using Index = Eigen::Index;
using LatticePoint = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Values in R u {+inf}; IEEE infinity gives inf + r = inf and inf >= x.
using Extended = double;
inline constexpr Extended kInfinity = std::numeric_limits<double>::infinity();

struct DiscreteFunction {
  Index dim = 0;
  std::function<Extended(const LatticePoint&)> eval;

  Extended operator()(const LatticePoint& x) const { return eval(x); }
};

std::int64_t linf_distance(const LatticePoint& x, const LatticePoint& y);

/// x -> y: every coordinate moves one unit toward y.
LatticePoint step_to(const LatticePoint& x, const LatticePoint& y);
/// y ->> x = x ->^{d-1} y with d = ||x - y||_inf: y moved one unit toward x
/// in the coordinates where |x_i - y_i| = d. Requires x != y.
LatticePoint far_step(const LatticePoint& x, const LatticePoint& y);
/// (x, x->y, x->^2 y, ..., y).
std::vector<LatticePoint> normal_path(const LatticePoint& x, const LatticePoint& y);

/// Both N-convexity inequalities at (x, y); the ->> one is skipped when x = y.
bool check_pair(const DiscreteFunction& f, const LatticePoint& x, const LatticePoint& y);

struct Box {
  std::int64_t lo = -8;
  std::int64_t hi = 8;
};

/// Samples `pairs` uniform pairs from box^dim. Returns the first violating
/// pair, if any.
std::optional<std::pair<LatticePoint, LatticePoint>> find_violation(const DiscreteFunction& f, Box box, int pairs,
                                                                     std::uint64_t seed);

// Building blocks of N-convex functions.
DiscreteFunction affine(Eigen::VectorXd a, double b);
DiscreteFunction max_sum_zero(Index dim, Index i, Index j);  ///< max(x_i + x_j, 0)
DiscreteFunction combine(double c, DiscreteFunction f, double d, DiscreteFunction g);
DiscreteFunction transpose_coords(DiscreteFunction f, Index i, Index j);
DiscreteFunction negate_coord(DiscreteFunction f, Index i);
DiscreteFunction translate(DiscreteFunction f, LatticePoint v);

struct NamedFunction {
  std::string name;
  DiscreteFunction f;
};

/// Linear functions, max(x_i + x_j, 0), nonnegative combinations, and their
/// transposition, sign-change and translation images on Z^dim (dim >= 4).
std::vector<NamedFunction> n_convex_catalog(Index dim, std::uint64_t seed);

/// -|x_1| on Z^1, which violates the first inequality at (-1, 1).
DiscreteFunction negative_abs();

/// One constraint x_i + y_j + c <= 0 of the apartment problem.
struct BarrierTerm {
  Index i = 0;
  Index j = 0;
  Index k = 0;
  std::int64_t c = 0;
};

struct BarrierSpec {
  Index n = 1;
  double penalty = 1.0;
  std::vector<BarrierTerm> constraints;
};

/// h(x, y) = -sum x - sum y + M sum max(x_i + y_j + c, 0) on Z^n x Z^n,
/// evaluated on the stacked point (x, y) of dimension 2n.
DiscreteFunction barrier(const BarrierSpec& spec);

/// 1..n^2 random constraints with c in [-3, 3] and penalty 2n + 1.
BarrierSpec random_barrier(Index n, std::uint64_t seed);

/// Exhaustive minimiser over box^dim; ties go to the lexicographically first point.
LatticePoint box_minimizer(const DiscreteFunction& f, Box box);

/// Checks f(z) <= f(z^1) <= ... <= f(y) along the normal path from z to y.
bool nondecreasing_along_path(const DiscreteFunction& f, const LatticePoint& z, const LatticePoint& y);

}  // namespace degdet::nconvex
