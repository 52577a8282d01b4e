#include "degdet/nconvex.hpp"

#include <random>

#include "degdet/errors.hpp"

namespace degdet::nconvex {

namespace {

void same_dim(const LatticePoint& x, const LatticePoint& y) {
  if (x.size() != y.size()) throw DimensionMismatch("lattice points of different dimension");
}

}  // namespace

std::int64_t linf_distance(const LatticePoint& x, const LatticePoint& y) {
  same_dim(x, y);
  return x.size() == 0 ? 0 : (x - y).cwiseAbs().maxCoeff();
}

LatticePoint step_to(const LatticePoint& x, const LatticePoint& y) {
  same_dim(x, y);
  LatticePoint out = x;
  for (Index i = 0; i < x.size(); ++i) out[i] += (y[i] > x[i]) - (x[i] > y[i]);
  return out;
}

LatticePoint far_step(const LatticePoint& x, const LatticePoint& y) {
  const std::int64_t d = linf_distance(x, y);
  if (d == 0) throw DimensionMismatch("far_step undefined for equal points");
  LatticePoint out = y;
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] - y[i] == d) ++out[i];
    if (x[i] - y[i] == -d) --out[i];
  }
  return out;
}

std::vector<LatticePoint> normal_path(const LatticePoint& x, const LatticePoint& y) {
  same_dim(x, y);
  std::vector<LatticePoint> path{x};
  while (path.back() != y) path.push_back(step_to(path.back(), y));
  return path;
}

bool check_pair(const DiscreteFunction& f, const LatticePoint& x, const LatticePoint& y) {
  same_dim(x, y);
  const Extended lhs = f(x) + f(y);
  if (!(lhs >= f(step_to(x, y)) + f(step_to(y, x)))) return false;
  if (x == y) return true;
  // x ->> y is far_step(y, x).
  return lhs >= f(far_step(y, x)) + f(far_step(x, y));
}

std::optional<std::pair<LatticePoint, LatticePoint>> find_violation(const DiscreteFunction& f, Box box, int pairs,
                                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(box.lo, box.hi);
  LatticePoint x(f.dim), y(f.dim);
  for (int s = 0; s < pairs; ++s) {
    for (Index i = 0; i < f.dim; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    if (!check_pair(f, x, y)) return std::make_pair(x, y);
  }
  return std::nullopt;
}

DiscreteFunction affine(Eigen::VectorXd a, double b) {
  const Index dim = a.size();
  return {dim, [a = std::move(a), b](const LatticePoint& x) { return a.dot(x.cast<double>()) + b; }};
}

DiscreteFunction max_sum_zero(Index dim, Index i, Index j) {
  return {dim, [i, j](const LatticePoint& x) { return static_cast<double>(std::max<std::int64_t>(x[i] + x[j], 0)); }};
}

DiscreteFunction combine(double c, DiscreteFunction f, double d, DiscreteFunction g) {
  const Index dim = f.dim;
  return {dim, [c, d, f = std::move(f), g = std::move(g)](const LatticePoint& x) {
            // 0 * inf must stay 0 for an unused summand.
            const Extended a = c == 0 ? 0.0 : c * f(x);
            const Extended b = d == 0 ? 0.0 : d * g(x);
            return a + b;
          }};
}

DiscreteFunction transpose_coords(DiscreteFunction f, Index i, Index j) {
  const Index dim = f.dim;
  return {dim, [f = std::move(f), i, j](const LatticePoint& x) {
            LatticePoint z = x;
            std::swap(z[i], z[j]);
            return f(z);
          }};
}

DiscreteFunction negate_coord(DiscreteFunction f, Index i) {
  const Index dim = f.dim;
  return {dim, [f = std::move(f), i](const LatticePoint& x) {
            LatticePoint z = x;
            z[i] = -z[i];
            return f(z);
          }};
}

DiscreteFunction translate(DiscreteFunction f, LatticePoint v) {
  const Index dim = f.dim;
  return {dim, [f = std::move(f), v = std::move(v)](const LatticePoint& x) { return f(LatticePoint(x + v)); }};
}

std::vector<NamedFunction> n_convex_catalog(Index dim, std::uint64_t seed) {
  if (dim < 4) throw DimensionMismatch("catalog needs dimension >= 4");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<Index> coord(0, dim - 1);
  Eigen::VectorXd a(dim);
  for (Index i = 0; i < dim; ++i) a[i] = coef(rng);
  LatticePoint shift(dim);
  for (Index i = 0; i < dim; ++i) shift[i] = coef(rng);

  std::vector<NamedFunction> out;
  out.push_back({"linear", affine(a, coef(rng))});
  out.push_back({"max(x0+x1,0)", max_sum_zero(dim, 0, 1)});
  out.push_back({"max(x2+x2,0)", max_sum_zero(dim, 2, 2)});
  const Index i = coord(rng), j = coord(rng);
  out.push_back({"max(x" + std::to_string(i) + "+x" + std::to_string(j) + ",0)", max_sum_zero(dim, i, j)});
  const auto combo = combine(2.0, max_sum_zero(dim, 0, 1), 3.0, max_sum_zero(dim, 2, 3));
  out.push_back({"2max(x0+x1,0)+3max(x2+x3,0)", combo});
  out.push_back({"combo+linear", combine(1.0, combo, 0.5, affine(a, 0.0))});
  out.push_back({"transpose(combo,0,3)", transpose_coords(combo, 0, 3)});
  out.push_back({"negate(max(x0+x1,0),0)", negate_coord(max_sum_zero(dim, 0, 1), 0)});
  out.push_back({"negate(negate(combo,1),2)", negate_coord(negate_coord(combo, 1), 2)});
  out.push_back({"translate(combo)", translate(combo, shift)});
  out.push_back({"translate(transpose(negate(max(x1+x2,0),2),1,3))",
                 translate(transpose_coords(negate_coord(max_sum_zero(dim, 1, 2), 2), 1, 3), shift)});
  return out;
}

DiscreteFunction negative_abs() {
  return {1, [](const LatticePoint& x) { return -static_cast<double>(x[0] < 0 ? -x[0] : x[0]); }};
}

DiscreteFunction barrier(const BarrierSpec& spec) {
  if (!(spec.penalty > 0)) throw InvalidInstance("barrier penalty must be positive");
  for (const auto& t : spec.constraints)
    if (t.i < 0 || t.i >= spec.n || t.j < 0 || t.j >= spec.n) throw InvalidInstance("barrier index out of range");
  const Index n = spec.n;
  return {2 * n, [spec](const LatticePoint& z) {
            double value = -static_cast<double>(z.sum());
            std::int64_t violation = 0;
            for (const auto& t : spec.constraints) violation += std::max<std::int64_t>(z[t.i] + z[spec.n + t.j] + t.c, 0);
            return value + spec.penalty * static_cast<double>(violation);
          }};
}

BarrierSpec random_barrier(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> count(1, n * n), index(0, n - 1);
  std::uniform_int_distribution<std::int64_t> offset(-3, 3);
  BarrierSpec spec{n, static_cast<double>(2 * n + 1), {}};
  const Index terms = count(rng);
  for (Index k = 0; k < terms; ++k) {
    const Index i = index(rng);
    const Index j = index(rng);
    spec.constraints.push_back({i, j, k, offset(rng)});
  }
  return spec;
}

LatticePoint box_minimizer(const DiscreteFunction& f, Box box) {
  LatticePoint x = LatticePoint::Constant(f.dim, box.lo);
  LatticePoint best = x;
  Extended best_value = f(x);
  for (;;) {
    Index i = f.dim - 1;
    while (i >= 0 && x[i] == box.hi) x[i--] = box.lo;
    if (i < 0) break;
    ++x[i];
    const Extended v = f(x);
    if (v < best_value) {
      best_value = v;
      best = x;
    }
  }
  return best;
}

bool nondecreasing_along_path(const DiscreteFunction& f, const LatticePoint& z, const LatticePoint& y) {
  const auto path = normal_path(z, y);
  for (std::size_t l = 1; l < path.size(); ++l)
    if (f(path[l]) < f(path[l - 1])) return false;
  return true;
}

}  // namespace degdet::nconvex
