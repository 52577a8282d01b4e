#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "degdet/degdet.hpp"
#include "degdet/errors.hpp"
#include "degdet/instance_io.hpp"
#include "degdet/instances.hpp"
#include "degdet/nconvex.hpp"
#include "degdet/oracles.hpp"
#include "degdet/partitioned.hpp"
#include "degdet/rational.hpp"

using nlohmann::json;
using namespace degdet;

namespace {

enum Exit : int { kOk = 0, kSolverError = 1, kUsage = 2, kDisagree = 3 };

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json degree_json(const Degree& d) {
  if (d.is_finite()) return d.value();
  return "-inf";
}

json error_json(const Error& e) { return {{"name", e.name()}, {"message", e.what()}}; }

void emit(const json& report) { std::cout << report.dump(1) << "\n"; }

struct RunFlags {
  std::string input;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> prime;
  bool no_scaling = false;
  bool no_truncate = false;
  std::optional<std::int64_t> truncate_depth;
  std::vector<std::string> oracles;
  std::string out;
  bool corrupt_value = false;

  SolveOptions solve_options() const {
    SolveOptions o;
    o.seed = seed;
    o.scaling_enabled = !no_scaling;
    o.truncate = !no_truncate;
    o.truncation_depth = truncate_depth;
    return o;
  }

  json echo(const std::string& command) const {
    json c = {{"name", command},     {"input", input},          {"seed", seed},
              {"scaling", !no_scaling}, {"truncate", !no_truncate}};
    c["prime"] = prime ? json(*prime) : json(nullptr);
    c["truncate_depth"] = truncate_depth ? json(*truncate_depth) : json(nullptr);
    if (!oracles.empty()) c["oracles"] = oracles;
    return c;
  }
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string kind_of(const AnyInstance& any) {
  if (std::holds_alternative<Instance>(any)) return "prime";
  if (std::holds_alternative<IntegerInstance>(any)) return "integer";
  return "partitioned2x2";
}

json instance_json(const AnyInstance& any) {
  json j = {{"digest", digest(save(any))}, {"kind", kind_of(any)}};
  std::visit(
      [&](const auto& inst) {
        j["n"] = inst.n;
        if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, PartitionedInstance>)
          j["cells"] = nonzero_cells(inst).size();
        else
          j["m"] = inst.m();
      },
      any);
  return j;
}

json solve_json(const SolveReport& r) {
  return {{"dstar_trace", r.dstar_trace},
          {"iterations", r.iterations},
          {"phases", r.phases},
          {"oracle_calls", r.oracle_calls},
          {"shift_applied", r.shift_applied},
          {"truncation_depth", r.truncation_depth},
          {"gap_resolutions", r.gap_resolutions},
          {"fallback_used", r.fallback_used},
          {"non_block_certificates", r.non_block_certificates},
          {"bound_warnings", r.bound_warnings}};
}

json rational_json(const RationalReport& r) {
  json primes = json::array();
  for (const auto& o : r.per_prime) {
    json e = {{"prime", o.prime}, {"method", o.method}};
    e["value"] = o.value ? degree_json(*o.value) : json(nullptr);
    if (!o.skip_reason.empty()) e["skip_reason"] = o.skip_reason;
    primes.push_back(std::move(e));
  }
  return {{"d", r.budget.d},
          {"log2_bound", r.budget.log2_bound},
          {"ell", r.budget.ell},
          {"skipped", r.skipped},
          {"per_prime", std::move(primes)}};
}

json matching_json(const TwoMatching& m) {
  json edges = json::array();
  for (const auto& e : m.edges) edges.push_back({{"i", e.i}, {"j", e.j}, {"multiplicity", e.multiplicity}});
  return edges;
}

/// Prime-field pencil the oracles run on.
Instance oracle_instance(const AnyInstance& any, const RunFlags& flags) {
  if (const auto* inst = std::get_if<Instance>(&any)) return *inst;
  if (const auto* p = std::get_if<PartitionedInstance>(&any)) return to_instance(*p);
  const auto& z = std::get<IntegerInstance>(any);
  return z.reduce(flags.prime ? PrimeModulus(*flags.prime) : PrimeModulus());
}

void check_prime_flag(const AnyInstance& any, const RunFlags& flags) {
  if (!flags.prime) return;
  std::uint64_t file_prime = *flags.prime;
  if (const auto* inst = std::get_if<Instance>(&any)) file_prime = inst->modulus.value();
  if (const auto* p = std::get_if<PartitionedInstance>(&any)) file_prime = p->modulus.value();
  if (file_prime != *flags.prime)
    throw UsageError("--prime " + std::to_string(*flags.prime) + " differs from the file prime " +
                     std::to_string(file_prime));
}

/// Runs the solver appropriate for the instance kind and fills `report`.
Degree run_solver(const AnyInstance& any, const RunFlags& flags, json& report, json& timing) {
  const SolveOptions opts = flags.solve_options();
  const auto start = Clock::now();
  Degree value = Degree::minus_infinity();
  if (const auto* inst = std::get_if<Instance>(&any)) {
    const SolveReport r = solve(*inst, opts);
    value = r.value;
    report["solve"] = solve_json(r);
    timing["phase_ms"] = r.phase_ms;
  } else if (const auto* p = std::get_if<PartitionedInstance>(&any)) {
    const Extraction x = solve_and_extract(*p, opts);
    value = x.value;
    report["solve"] = solve_json(x.report);
    report["matching"] = x.matching ? matching_json(*x.matching) : json(nullptr);
    report["rule_fallback"] = x.rule_fallback;
    timing["phase_ms"] = x.report.phase_ms;
  } else {
    const auto& z = std::get<IntegerInstance>(any);
    if (flags.prime) {
      const SolveReport r = solve(z.reduce(PrimeModulus(*flags.prime)), opts);
      value = r.value;
      report["solve"] = solve_json(r);
      timing["phase_ms"] = r.phase_ms;
    } else {
      RationalOptions ro;
      ro.solve = opts;
      const RationalReport r = solve_rational(z, ro);
      value = r.value;
      report["rational"] = rational_json(r);
    }
  }
  timing["solve_ms"] = ms_since(start);
  if (flags.corrupt_value) value = value.is_finite() ? Degree(value.value() + 1) : Degree(0);
  report["value"] = degree_json(value);
  return value;
}

Degree run_oracle(const std::string& name, const AnyInstance& any, const RunFlags& flags) {
  if (name == "enumerate2x2") {
    const auto* p = std::get_if<PartitionedInstance>(&any);
    if (!p) throw InvalidInstance("enumerate2x2 needs a partitioned2x2 instance");
    return enumerate_perfect(*p, flags.seed).best_weight;
  }
  const Instance inst = oracle_instance(any, flags);
  if (name == "hungarian") {
    const auto w = bipartite_weights(inst);
    if (!w) throw InvalidInstance("hungarian needs every term to be a multiple of one matrix unit");
    return hungarian(*w);
  }
  if (name == "commutative") return degdet_commutative(inst, flags.seed);
  if (name == "blowup") return degdet_blowup(inst, flags.seed);
  if (name == "newton") return newton_small(inst).lp(inst.costs);
  throw UsageError("unknown oracle " + name);
}

int cmd_solve(const RunFlags& flags, bool verify) {
  const auto start = Clock::now();
  json report = {{"command", flags.echo(verify ? "verify" : "solve")}};
  json timing = json::object();
  int code = kOk;
  try {
    const AnyInstance any = load_file(flags.input);
    check_prime_flag(any, flags);
    report["instance"] = instance_json(any);
    const Degree value = run_solver(any, flags, report, timing);
    if (verify) {
      std::vector<std::string> names = flags.oracles;
      if (names.empty()) names = {std::holds_alternative<PartitionedInstance>(any) ? "enumerate2x2" : "blowup"};
      json comparisons = json::array();
      bool all_agree = true;
      bool oracle_failed = false;
      for (const auto& name : names) {
        const auto t0 = Clock::now();
        json c = {{"name", name}};
        try {
          const Degree v = run_oracle(name, any, flags);
          c["value"] = degree_json(v);
          c["agree"] = v == value;
          if (!(v == value)) all_agree = false;
        } catch (const Error& e) {
          c["error"] = error_json(e);
          c["agree"] = false;
          oracle_failed = true;
        }
        timing["oracle_ms"][name] = ms_since(t0);
        comparisons.push_back(std::move(c));
      }
      report["oracles"] = std::move(comparisons);
      report["agree"] = all_agree && !oracle_failed;
      if (oracle_failed)
        code = kSolverError;
      else if (!all_agree)
        code = kDisagree;
    }
  } catch (const UsageError& e) {
    std::cerr << "degdet: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "degdet: " << e.what() << "\n";
    report["error"] = error_json(e);
    code = kSolverError;
  }
  timing["total_ms"] = ms_since(start);
  report["timing"] = std::move(timing);
  emit(report);
  return code;
}

struct GenFlags {
  std::string generator;
  Index n = 3;
  std::size_t m = 0;
  std::optional<std::int64_t> cmin;
  std::int64_t cmax = 10;
  double density = 1.0;
  Index max_rank = 0;
  std::int64_t bound = 3;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> prime;
  std::string out;
};

AnyInstance generate(const GenFlags& g) {
  const Range costs{g.cmin.value_or(-g.cmax), g.cmax};
  if (costs.lo > costs.hi) throw UsageError("--cmin exceeds --cmax");
  if (g.n < 1) throw UsageError("--n must be positive");
  const PrimeModulus mod = g.prime ? PrimeModulus(*g.prime) : PrimeModulus();
  const std::size_t m = g.m ? g.m : static_cast<std::size_t>(g.n);
  if (g.generator == "bipartite") return gen_bipartite(random_weights(g.n, g.density, costs, g.seed), mod);
  if (g.generator == "rank1") return gen_rank1(g.n, m, g.seed, costs, mod);
  if (g.generator == "dense") return gen_dense(g.n, m, g.seed, costs, g.max_rank, mod);
  if (g.generator == "integer") return gen_integer(g.n, m, g.bound, g.seed, costs);
  return gen_2x2(g.n, g.seed, random_rank_profile(g.n, g.seed), costs, mod);
}

int cmd_gen(const GenFlags& g) {
  try {
    const AnyInstance any = generate(g);
    const std::string bytes = save(any);
    if (g.out.empty()) {
      std::cout << bytes;
      std::cerr << "digest " << digest(bytes) << "\n";
    } else {
      save_file(g.out, any);
      emit({{"digest", digest(bytes)}, {"kind", kind_of(any)}, {"out", g.out}});
    }
    return kOk;
  } catch (const UsageError& e) {
    std::cerr << "degdet: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "degdet: " << e.what() << "\n";
    return kUsage;
  }
}

json selftest_nconvex(std::uint64_t seed, int pairs, bool& ok) {
  using namespace nconvex;
  json checks = json::array();
  for (const auto& [name, f] : n_convex_catalog(6, seed)) {
    const auto bad = find_violation(f, Box{}, pairs, mix_seed(seed, checks.size()));
    checks.push_back({{"name", "n-convex " + name}, {"pass", !bad.has_value()}});
    ok = ok && !bad;
  }
  const bool counter = find_violation(negative_abs(), Box{}, pairs, seed).has_value();
  checks.push_back({{"name", "-|x1| is rejected"}, {"pass", counter}});
  ok = ok && counter;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-8, 8);
  bool lengths = true;
  for (int t = 0; t < pairs; ++t) {
    LatticePoint x(6), y(6);
    for (Index i = 0; i < 6; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    lengths = lengths && static_cast<std::int64_t>(normal_path(x, y).size()) == linf_distance(x, y) + 1;
  }
  checks.push_back({{"name", "normal path length"}, {"pass", lengths}});
  ok = ok && lengths;

  bool chains = true;
  const Box box{-2, 2};
  std::uniform_int_distribution<std::int64_t> in_box(box.lo, box.hi);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const DiscreteFunction h = barrier(random_barrier(2, mix_seed(seed, 100 + s)));
    const LatticePoint z = box_minimizer(h, box);
    for (int t = 0; t < 20; ++t) {
      LatticePoint y(h.dim);
      for (Index i = 0; i < h.dim; ++i) y[i] = in_box(rng);
      chains = chains && nondecreasing_along_path(h, z, y);
    }
  }
  checks.push_back({{"name", "barrier chain from minimizer"}, {"pass", chains}});
  ok = ok && chains;
  return checks;
}

json selftest_invariants(std::uint64_t seed, bool& ok) {
  json checks = json::array();
  auto record = [&](const std::string& name, bool pass) {
    checks.push_back({{"name", name}, {"pass", pass}});
    ok = ok && pass;
  };
  bool shift = true, monotone = true, scaling = true, truncation = true, blowup = true, bound = true;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const std::uint64_t inst_seed = mix_seed(seed, s);
    const Index n = 2 + static_cast<Index>(s % 2);
    const Instance inst = gen_dense(n, 3, inst_seed, {-20, 20});
    SolveOptions exact;
    exact.seed = inst_seed;
    const SolveReport base = solve(inst, exact);
    const std::int64_t limit = iteration_bound(n, inst.m());
    for (auto it : base.iterations) bound = bound && it <= limit;
    bound = bound && !base.iterations.empty() && base.iterations.front() == 1;

    Instance shifted = inst;
    for (auto& c : shifted.costs) c += 5;
    const Degree sv = solve(shifted, exact).value;
    shift = shift && (base.value.is_finite() ? sv == Degree(base.value.value() + 5 * n) : sv == base.value);

    Instance bumped = inst;
    bumped.costs[s % bumped.costs.size()] += 3;
    monotone = monotone && !(solve(bumped, exact).value < base.value);

    SolveOptions flat = exact;
    flat.scaling_enabled = false;
    scaling = scaling && solve(inst, flat).value == base.value;
    SolveOptions full = exact;
    full.truncate = false;
    truncation = truncation && solve(inst, full).value == base.value;
    blowup = blowup && degdet_blowup(inst, inst_seed) == base.value;
  }
  blowup = blowup && solve(skew3()).value == Degree(0) && degdet_blowup(skew3(), seed) == Degree(0);
  record("shift by b adds n b", shift);
  record("monotone in costs", monotone);
  record("scaling matches no scaling", scaling);
  record("truncation matches no truncation", truncation);
  record("solve matches blow-up", blowup);
  record("phase iteration bound", bound);
  return checks;
}

int cmd_selftest(std::uint64_t seed, int pairs) {
  const auto start = Clock::now();
  bool ok = true;
  json checks;
  try {
    checks = selftest_nconvex(seed, pairs, ok);
    for (auto& c : selftest_invariants(seed, ok)) checks.push_back(std::move(c));
  } catch (const Error& e) {
    std::cerr << "degdet: " << e.what() << "\n";
    emit({{"command", {{"name", "selftest"}, {"seed", seed}}}, {"error", error_json(e)}});
    return kSolverError;
  }
  emit({{"command", {{"name", "selftest"}, {"seed", seed}, {"pairs", pairs}}},
        {"checks", checks},
        {"pass", ok},
        {"timing", {{"total_ms", ms_since(start)}}}});
  return ok ? kOk : kDisagree;
}

void add_run_flags(CLI::App& sub, RunFlags& f, bool verify) {
  sub.add_option("instance", f.input, "instance file")->required();
  sub.add_option("--seed", f.seed, "random seed");
  sub.add_option("--prime", f.prime, "prime for integer instances");
  sub.add_flag("--no-scaling", f.no_scaling, "solve the final costs directly");
  sub.add_flag("--no-truncate", f.no_truncate, "keep every Laurent coefficient");
  sub.add_option("--truncate-depth", f.truncate_depth, "truncation depth")->check(CLI::NonNegativeNumber);
  sub.add_option("--out", f.out, "also write the report here");
  if (verify) {
    sub.add_option("--oracle", f.oracles, "hungarian,commutative,blowup,enumerate2x2,newton")
        ->delimiter(',')
        ->check(CLI::IsMember({"hungarian", "commutative", "blowup", "enumerate2x2", "newton"}));
    sub.add_flag("--corrupt-value", f.corrupt_value)->group("");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deg Det solver"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("generator", gen.generator, "bipartite | rank1 | partitioned2x2 | dense | integer")
      ->required()
      ->check(CLI::IsMember({"bipartite", "rank1", "partitioned2x2", "dense", "integer"}));
  gen_cmd->add_option("--n", gen.n, "size");
  gen_cmd->add_option("--m", gen.m, "number of terms (default n)");
  gen_cmd->add_option("--cmin", gen.cmin, "least cost (default -cmax)");
  gen_cmd->add_option("--cmax", gen.cmax, "largest cost");
  gen_cmd->add_option("--density", gen.density, "edge probability for bipartite")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--max-rank", gen.max_rank, "rank cap for dense terms");
  gen_cmd->add_option("--bound", gen.bound, "entry bound for integer instances")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--prime", gen.prime, "field prime");
  gen_cmd->add_option("--out", gen.out, "output path (default stdout)");

  RunFlags solve_flags, verify_flags;
  auto* solve_cmd = app.add_subcommand("solve", "compute deg Det");
  add_run_flags(*solve_cmd, solve_flags, false);
  auto* verify_cmd = app.add_subcommand("verify", "compare the solver with oracles");
  add_run_flags(*verify_cmd, verify_flags, true);

  std::uint64_t self_seed = 1;
  int pairs = 10000;
  auto* self_cmd = app.add_subcommand("selftest", "N-convexity and invariant suites");
  self_cmd->add_option("--seed", self_seed, "random seed");
  self_cmd->add_option("--pairs", pairs, "random pairs per function")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*gen_cmd) return cmd_gen(gen);
  if (*self_cmd) return cmd_selftest(self_seed, pairs);
  const bool verify = bool(*verify_cmd);
  const RunFlags& flags = verify ? verify_flags : solve_flags;
  if (!flags.out.empty()) {
    std::ostringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    const int code = cmd_solve(flags, verify);
    std::cout.rdbuf(old);
    std::cout << captured.str();
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
      std::cerr << "degdet: cannot write " << flags.out << "\n";
      return kUsage;
    }
    file << captured.str();
    return code;
  }
  return cmd_solve(flags, verify);
}
