#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "degdet/degdet.hpp"
#include "degdet/errors.hpp"
#include "degdet/instances.hpp"
#include "degdet/nconvex.hpp"
#include "degdet/oracles.hpp"
#include "degdet/partitioned.hpp"
#include "degdet/rational.hpp"

using namespace degdet;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Every solve made by the harness goes through here so the phase bound is checked on all of them.
struct BoundLedger {
  std::int64_t solves = 0;
  std::int64_t violations = 0;
  std::int64_t phase0_violations = 0;
  std::int64_t singular = 0;
  std::int64_t max_ratio_num = 0;
  std::int64_t max_ratio_den = 1;

  SolveReport run(const Instance& inst, const SolveOptions& opts) {
    const SolveReport r = solve(inst, opts);
    if (!opts.scaling_enabled) return r;
    if (r.phases == 0 && !r.value.is_finite()) {
      ++singular;
      return r;
    }
    ++solves;
    const std::int64_t limit = iteration_bound(inst.n, inst.m());
    for (auto it : r.iterations) {
      if (it > limit) ++violations;
      if (it * max_ratio_den > max_ratio_num * limit) {
        max_ratio_num = it;
        max_ratio_den = limit;
      }
    }
    if (r.iterations.empty() || r.iterations.front() != 1) ++phase0_violations;
    return r;
  }
  SolveReport run(const Instance& inst, std::uint64_t seed) {
    SolveOptions o;
    o.seed = seed;
    return run(inst, o);
  }
};

BoundLedger ledger;

std::string show(const Degree& d) { return d.to_string(); }

std::int64_t shifted_cmax(const Instance& inst) {
  const auto [lo, hi] = std::minmax_element(inst.costs.begin(), inst.costs.end());
  return *hi - *lo;
}

/// Dense and rank-1 pencils alternately; n <= 4, m <= 6.
Instance mixed_instance(std::uint64_t seed, Range costs, Index max_n = 4, std::size_t max_m = 6) {
  std::mt19937_64 rng(seed);
  const Index n = std::uniform_int_distribution<Index>(1, max_n)(rng);
  const std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
  if (seed % 3 == 0 && m >= static_cast<std::size_t>(n)) return gen_rank1(n, m, seed, costs);
  const Index cap = seed % 3 == 1 ? std::max<Index>(1, n - 1) : 0;
  return gen_dense(n, m, seed, costs, cap);
}

/// S A_k T for the skew fixture with random invertible S, T and random costs: deg det = -inf throughout.
Instance conjugated_skew(std::uint64_t seed, Range costs) {
  std::mt19937_64 rng(seed);
  Instance inst = skew3();
  const PrimeModulus mod = inst.modulus;
  auto invertible = [&] {
    for (;;) {
      FieldMatrix g = FieldMatrix::random(mod, 3, 3, rng);
      if (rank(g) == 3) return g;
    }
  };
  const FieldMatrix left = invertible(), right = invertible();
  std::uniform_int_distribution<std::int64_t> cost(costs.lo, costs.hi);
  for (std::size_t k = 0; k < inst.m(); ++k) {
    inst.mats[k] = left * inst.mats[k] * right;
    inst.costs[k] = cost(rng);
  }
  return inst;
}

Outcome bipartite_equivalence() {
  Outcome o;
  double worst = 0;
  int agree = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index n = 1 + static_cast<Index>(s % 20);
    const double density = s % 2 == 0 ? 1.0 : 0.15 + 0.05 * static_cast<double>(s % 9);
    const WeightGrid w = random_weights(n, density, {-1000000, 1000000}, s);
    Instance inst;
    try {
      inst = gen_bipartite(w);
    } catch (const InvalidInstance&) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Degree v = ledger.run(inst, s + 1).value;
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, sec);
    const Degree h = hungarian(w);
    if (v == h && sec < 5.0) {
      ++agree;
    } else {
      o.pass = false;
      o.detail += " seed " + std::to_string(s) + ": " + show(v) + " vs " + show(h);
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d agree, slowest %.3f s", agree, worst);
  o.detail = buf + o.detail;
  return o;
}

Outcome blowup_equivalence() {
  Outcome o;
  int agree = 0, gaps = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Instance inst = s % 10 == 9 ? conjugated_skew(1000 + s, {-100, 100}) : mixed_instance(1000 + s, {-100, 100});
    const Degree v = ledger.run(inst, s + 1).value;
    const Degree b = degdet_blowup(inst, s + 7);
    if (!(degdet_commutative(inst, s) == v)) ++gaps;
    if (v == b)
      ++agree;
    else {
      o.pass = false;
      o.detail += " seed " + std::to_string(1000 + s) + ": " + show(v) + " vs " + show(b);
    }
  }
  const Instance skew = skew3({3, -4, 8});
  const Degree sv = ledger.run(skew, 1).value;
  const Instance flat = skew3();
  const bool flat_ok = ledger.run(flat, 1).value == Degree(0) && degdet_blowup(flat, 3) == Degree(0) &&
                       degdet_commutative(flat, 3) == Degree::minus_infinity();
  const bool skew_blowup = sv == degdet_blowup(skew, 5);
  if (!(flat_ok && skew_blowup)) o.pass = false;
  o.detail = std::to_string(agree) + " + skew fixtures agree (" + std::to_string(gaps) +
             " with deg det < deg Det); skew: deg Det 0, deg det -inf" +
             (flat_ok ? "" : " [skew fixture wrong]") + (skew_blowup ? "" : " [priced skew disagrees]") + o.detail;
  return o;
}

Outcome shift_metamorphic() {
  Outcome o;
  int checked = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = mixed_instance(2000 + s, {-50, 50});
    const Degree base = ledger.run(inst, s).value;
    for (std::int64_t b : {-7, 1, 13}) {
      Instance moved = inst;
      for (auto& c : moved.costs) c += b;
      const Degree v = ledger.run(moved, s).value;
      const Degree want = base.is_finite() ? Degree(base.value() + inst.n * b) : base;
      ++checked;
      if (!(v == want)) {
        o.pass = false;
        o.detail += " seed " + std::to_string(2000 + s) + " b=" + std::to_string(b);
      }
    }
  }
  o.detail = std::to_string(checked) + " shifted solves" + o.detail;
  return o;
}

Outcome monotonicity() {
  Outcome o;
  int checked = 0;
  std::mt19937_64 rng(4);
  for (std::uint64_t s = 0; s < 50; ++s) {
    Instance inst = mixed_instance(3000 + s, {-30, 30});
    Degree prev = ledger.run(inst, s).value;
    for (int step = 0; step < 3; ++step) {
      const std::size_t k = std::uniform_int_distribution<std::size_t>(0, inst.m() - 1)(rng);
      inst.costs[k] += std::uniform_int_distribution<std::int64_t>(1, 20)(rng);
      const Degree v = ledger.run(inst, s).value;
      ++checked;
      if (v < prev) {
        o.pass = false;
        o.detail += " seed " + std::to_string(3000 + s);
      }
      prev = v;
    }
  }
  o.detail = std::to_string(checked) + " increments" + o.detail;
  return o;
}

Outcome iteration_bound_check() {
  Outcome o;
  o.pass = ledger.violations == 0 && ledger.phase0_violations == 0 && ledger.solves > 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "%lld scaled solves (+%lld nc-singular, no phases), %lld phases over n^2 m + 1, %lld with phase 0 != 1, "
                "max ratio %lld/%lld",
                static_cast<long long>(ledger.solves), static_cast<long long>(ledger.singular), static_cast<long long>(ledger.violations),
                static_cast<long long>(ledger.phase0_violations), static_cast<long long>(ledger.max_ratio_num),
                static_cast<long long>(ledger.max_ratio_den));
  o.detail = buf;
  return o;
}

Outcome truncation_soundness() {
  Outcome o;
  int agree = 0;
  std::int64_t widest = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = mixed_instance(4000 + s, {-5000, 5000}, 4, 5);
    widest = std::max(widest, shifted_cmax(inst));
    SolveOptions cut;
    cut.seed = s;
    SolveOptions full = cut;
    full.truncate = false;
    const SolveReport a = ledger.run(inst, cut);
    const SolveReport b = ledger.run(inst, full);
    const std::int64_t depth = 2 * inst.n * inst.n * static_cast<std::int64_t>(inst.m());
    if (a.value == b.value && a.truncation_depth == depth && b.truncation_depth == 0)
      ++agree;
    else {
      o.pass = false;
      o.detail += " seed " + std::to_string(4000 + s) + ": " + show(a.value) + " vs " + show(b.value);
    }
  }
  o.detail = std::to_string(agree) + " agree, cost spread up to " + std::to_string(widest) + o.detail;
  return o;
}

Outcome scaling_soundness() {
  Outcome o;
  int agree = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Instance inst = mixed_instance(5000 + s, {-16, 16});
    SolveOptions scaled;
    scaled.seed = s;
    SolveOptions flat = scaled;
    flat.scaling_enabled = false;
    const Degree a = ledger.run(inst, scaled).value;
    const Degree b = ledger.run(inst, flat).value;
    if (a == b)
      ++agree;
    else {
      o.pass = false;
      o.detail += " seed " + std::to_string(5000 + s);
    }
  }
  o.detail = std::to_string(agree) + " agree" + o.detail;
  return o;
}

Outcome n_convexity() {
  using namespace nconvex;
  Outcome o;
  const auto catalog = n_convex_catalog(6, 8);
  for (std::size_t k = 0; k < catalog.size(); ++k)
    if (auto bad = find_violation(catalog[k].f, Box{-8, 8}, 10000, 80 + k)) {
      o.pass = false;
      o.detail += " violated by " + catalog[k].name;
    }
  const bool counter = find_violation(negative_abs(), Box{-8, 8}, 10000, 9).has_value() &&
                       !check_pair(negative_abs(), LatticePoint::Constant(1, -1), LatticePoint::Constant(1, 1));
  if (!counter) o.pass = false;
  std::mt19937_64 rng(88);
  std::uniform_int_distribution<std::int64_t> coord(-8, 8);
  std::int64_t bad_paths = 0;
  for (int t = 0; t < 10000; ++t) {
    LatticePoint x(6), y(6);
    for (Index i = 0; i < 6; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    const auto path = normal_path(x, y);
    bool steps = path.front() == x && path.back() == y;
    for (std::size_t l = 1; l < path.size(); ++l) steps = steps && linf_distance(path[l - 1], path[l]) == 1;
    if (static_cast<std::int64_t>(path.size()) != linf_distance(x, y) + 1 || !steps) ++bad_paths;
  }
  if (bad_paths) o.pass = false;
  o.detail = std::to_string(catalog.size()) + " functions x 10000 pairs, -|x1| " +
             (counter ? "rejected" : "NOT rejected") + ", " + std::to_string(bad_paths) + " bad paths" + o.detail;
  return o;
}

Outcome barrier_monotonicity() {
  using namespace nconvex;
  Outcome o;
  std::mt19937_64 rng(99);
  int chains = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = s % 4 == 3 ? 3 : 2;
    const Box box = n == 3 ? Box{-2, 2} : Box{-3, 3};
    const DiscreteFunction h = barrier(random_barrier(n, 900 + s));
    const LatticePoint z = box_minimizer(h, box);
    std::uniform_int_distribution<std::int64_t> coord(box.lo, box.hi);
    for (int t = 0; t < 50; ++t) {
      LatticePoint y(h.dim);
      for (Index i = 0; i < h.dim; ++i) y[i] = coord(rng);
      ++chains;
      if (!nondecreasing_along_path(h, z, y)) {
        o.pass = false;
        o.detail += " spec " + std::to_string(s);
        break;
      }
    }
  }
  o.detail = std::to_string(chains) + " chains from box minimizers" + o.detail;
  return o;
}

Outcome rational_pipeline() {
  using boost::multiprecision::cpp_int;
  Outcome o;
  int agree = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 1 + static_cast<Index>(s % 3);
    const std::int64_t bound = 1 + static_cast<std::int64_t>(s % 3);
    const IntegerInstance inst = gen_integer(n, 1 + s % 4, bound, 6000 + s, {-100, 100});
    const Degree direct = ledger.run(inst.reduce(PrimeModulus()), s).value;
    RationalOptions opts;
    opts.solve.seed = s;
    const RationalReport r = solve_rational(inst, opts);
    if (r.value == direct)
      ++agree;
    else {
      o.pass = false;
      o.detail += " seed " + std::to_string(6000 + s) + ": " + show(r.value) + " vs " + show(direct);
    }
  }
  int bounds = 0;
  for (Index n = 1; n <= 4; ++n)
    for (std::int64_t bound = 1; bound <= 4; ++bound) {
      const Index d = std::max<Index>(1, n - 1);
      const auto nd = static_cast<unsigned>(n * d);
      const cpp_int l = boost::multiprecision::pow(cpp_int(nd), 2 * nd) * boost::multiprecision::pow(cpp_int(bound), nd);
      std::int64_t exact = 0;
      if (l > 1) {
        const auto msb = static_cast<std::int64_t>(boost::multiprecision::msb(l));
        exact = (l & (l - 1)) == 0 ? msb : msb + 1;
      }
      const PrimeBudget b = prime_budget(n, bound);
      if (b.log2_bound >= exact && b.log2_bound <= exact + 2)
        ++bounds;
      else {
        o.pass = false;
        o.detail += " bound n=" + std::to_string(n) + " D=" + std::to_string(bound);
      }
    }
  o.detail = std::to_string(agree) + " agree, " + std::to_string(bounds) + "/16 bounds within +2" + o.detail;
  return o;
}

Outcome partitioned() {
  Outcome o;
  int agree = 0, fallbacks = 0, singular = 0;
  std::uint64_t seed = 7000;
  for (int t = 0; t < 50; ++t) {
    PartitionedInstance p;
    do {
      ++seed;
      const Index n = 1 + static_cast<Index>(seed % 4);
      p = gen_2x2(n, seed, random_rank_profile(n, seed), {-50, 50});
    } while (nonzero_cells(p).empty());
    SolveOptions opts;
    opts.seed = seed;
    const Extraction x = solve_and_extract(p, opts);
    const Degree e = enumerate_perfect(p, seed).best_weight;
    const Degree c = degdet_commutative(to_instance(p), seed);
    bool ok = x.value == e && x.value == c;
    if (x.value.is_finite()) {
      ok = ok && x.matching && x.matching->is_perfect(p.n) && x.matching->weight(p) == x.value.value() &&
           is_consistent(*x.matching, p, seed + 1);
    } else {
      ++singular;
      ok = ok && !x.matching;
    }
    if (x.rule_fallback) ++fallbacks;
    if (ok)
      ++agree;
    else {
      o.pass = false;
      o.detail += " seed " + std::to_string(seed) + ": " + show(x.value) + "/" + show(e) + "/" + show(c);
    }
  }
  o.detail = std::to_string(agree) + " agree (" + std::to_string(singular) + " singular, " +
             std::to_string(fallbacks) + " needed the cycle-option search)" + o.detail;
  return o;
}

Outcome newton_lp() {
  Outcome o;
  int agree = 0, vectors = 0;
  std::mt19937_64 rng(12);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Instance inst = mixed_instance(8000 + s, {0, 0}, 4, 5);
    const NewtonSupport support = newton_small(inst);
    for (const auto& u : support.exponents) {
      int total = 0;
      for (int e : u) {
        if (e < 0) o.pass = false;
        total += e;
      }
      ++vectors;
      if (total != inst.n || u.size() != inst.m()) {
        o.pass = false;
        o.detail += " exponent off simplex, seed " + std::to_string(8000 + s);
      }
    }
    for (int t = 0; t < 5; ++t) {
      Instance priced = inst;
      for (auto& c : priced.costs) c = std::uniform_int_distribution<std::int64_t>(-100, 100)(rng);
      const Degree lp = support.lp(priced.costs);
      const Degree cd = degdet_commutative(priced, s * 5 + static_cast<std::uint64_t>(t));
      if (lp == cd)
        ++agree;
      else {
        o.pass = false;
        o.detail += " seed " + std::to_string(8000 + s) + ": " + show(lp) + " vs " + show(cd);
      }
    }
  }
  o.detail = std::to_string(agree) + " cost vectors agree, " + std::to_string(vectors) + " exponent vectors on the simplex" + o.detail;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "bipartite equivalence", bipartite_equivalence},
      {2, "blow-up oracle equivalence", blowup_equivalence},
      {3, "shift metamorphic", shift_metamorphic},
      {4, "monotonicity", monotonicity},
      {6, "truncation soundness", truncation_soundness},
      {7, "scaling soundness", scaling_soundness},
      {8, "N-convexity suite", n_convexity},
      {9, "barrier monotonicity", barrier_monotonicity},
      {10, "rational pipeline", rational_pipeline},
      {11, "2x2-partitioned", partitioned},
      {12, "Newton LP", newton_lp},
      {5, "iteration bound", iteration_bound_check},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("threw ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char head[96];
    std::snprintf(head, sizeof head, "criterion %2d %-28s %s (%.2f s): ", c.id, c.name, out.pass ? "PASS" : "FAIL", sec);
    lines.emplace_back(c.id, head + out.detail);
    all = all && out.pass;
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [id, line] : lines) std::printf("%s\n", line.c_str());
  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILURES");
  return all ? 0 : 1;
}
