#include "degdet/instances.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "degdet/errors.hpp"

namespace degdet {

namespace {

std::int64_t draw(Rng& rng, Range r) {
  if (r.lo > r.hi) throw InvalidInstance("empty range [" + std::to_string(r.lo) + ", " + std::to_string(r.hi) + "]");
  return std::uniform_int_distribution<std::int64_t>(r.lo, r.hi)(rng);
}

FieldMatrix nonzero_column(PrimeModulus mod, Index n, Rng& rng) {
  for (;;) {
    FieldMatrix v = FieldMatrix::random(mod, n, 1, rng);
    if (!v.is_zero()) return v;
  }
}

FieldMatrix random_of_rank(PrimeModulus mod, Index n, Index r, Rng& rng) {
  if (r == 0) return FieldMatrix(mod, n, n);
  for (;;) {
    FieldMatrix m = FieldMatrix::random(mod, n, r, rng) * FieldMatrix::random(mod, r, n, rng);
    if (rank(m) == r) return m;
  }
}

std::map<std::string, std::string> gen_meta(const std::string& name, std::uint64_t seed) {
  return {{"generator", name}, {"seed", std::to_string(seed)}};
}

}  // namespace

void Instance::validate() const {
  if (n < 1) throw InvalidInstance("n must be at least 1");
  if (mats.empty()) throw InvalidInstance("instance has no terms");
  if (costs.size() != mats.size()) throw InvalidInstance("cost count differs from term count");
  for (const auto& a : mats) {
    if (a.rows() != n || a.cols() != n) throw InvalidInstance("coefficient matrix is not n x n");
    if (!(a.modulus() == modulus)) throw InvalidInstance("coefficient matrix over a different field");
  }
}

void IntegerInstance::validate() const {
  if (n < 1) throw InvalidInstance("n must be at least 1");
  if (mats.empty()) throw InvalidInstance("instance has no terms");
  if (costs.size() != mats.size()) throw InvalidInstance("cost count differs from term count");
  for (const auto& a : mats)
    if (static_cast<Index>(a.size()) != n * n) throw InvalidInstance("coefficient matrix is not n x n");
  if (entry_bound < 0) throw InvalidInstance("entry bound must be nonnegative");
}

std::int64_t IntegerInstance::effective_bound() const {
  std::int64_t bound = std::max<std::int64_t>(entry_bound, 1);
  for (const auto& a : mats)
    for (std::int64_t v : a) bound = std::max(bound, v < 0 ? -v : v);
  return bound;
}

Instance IntegerInstance::reduce(PrimeModulus mod) const {
  validate();
  Instance out;
  out.modulus = mod;
  out.n = n;
  out.costs = costs;
  out.meta = meta;
  for (const auto& a : mats) out.mats.push_back(FieldMatrix::from_integers(mod, n, n, a));
  return out;
}

void PartitionedInstance::validate() const {
  if (n < 1) throw InvalidInstance("n must be at least 1");
  const auto cells = static_cast<std::size_t>(n * n);
  if (blocks.size() != cells || costs.size() != cells) throw InvalidInstance("expected an n x n grid of blocks");
  for (const auto& b : blocks) {
    if (b.rows() != 2 || b.cols() != 2) throw InvalidInstance("blocks must be 2 x 2");
    if (!(b.modulus() == modulus)) throw InvalidInstance("block over a different field");
  }
}

Instance gen_bipartite(const WeightGrid& weights, PrimeModulus mod) {
  Instance inst;
  inst.modulus = mod;
  inst.n = static_cast<Index>(weights.size());
  for (Index i = 0; i < inst.n; ++i) {
    if (static_cast<Index>(weights[i].size()) != inst.n) throw DimensionMismatch("weight grid must be square");
    for (Index j = 0; j < inst.n; ++j)
      if (const auto& w = weights[i][j]) {
        inst.mats.push_back(FieldMatrix::unit(mod, inst.n, inst.n, i, j));
        inst.costs.push_back(*w);
      }
  }
  if (inst.mats.empty()) throw InvalidInstance("empty edge set");
  inst.meta = {{"generator", "bipartite"}};
  return inst;
}

WeightGrid random_weights(Index n, double density, Range costs, std::uint64_t seed) {
  Rng rng(seed);
  std::bernoulli_distribution present(density);
  WeightGrid grid(static_cast<std::size_t>(n), std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(n)));
  for (auto& row : grid)
    for (auto& cell : row) {
      const bool keep = present(rng);
      const std::int64_t c = draw(rng, costs);
      if (keep) cell = c;
    }
  return grid;
}

Instance gen_rank1(Index n, std::size_t m, std::uint64_t seed, Range costs, PrimeModulus mod) {
  if (n < 1 || static_cast<Index>(m) < n) throw InvalidInstance("gen_rank1 needs m >= n >= 1");
  Rng rng(seed);
  Instance inst;
  inst.modulus = mod;
  inst.n = n;
  for (std::size_t k = 0; k < m; ++k) {
    const FieldMatrix u = nonzero_column(mod, n, rng);
    const FieldMatrix v = nonzero_column(mod, n, rng);
    inst.mats.push_back(u * v.transpose());
    inst.costs.push_back(draw(rng, costs));
  }
  inst.meta = gen_meta("rank1", seed);
  return inst;
}

Instance gen_dense(Index n, std::size_t m, std::uint64_t seed, Range costs, Index max_rank, PrimeModulus mod) {
  if (n < 1 || m < 1) throw InvalidInstance("gen_dense needs n, m >= 1");
  const Index cap = max_rank <= 0 ? n : std::min(max_rank, n);
  Rng rng(seed);
  std::uniform_int_distribution<Index> pick_rank(1, cap);
  Instance inst;
  inst.modulus = mod;
  inst.n = n;
  for (std::size_t k = 0; k < m; ++k) {
    inst.mats.push_back(random_of_rank(mod, n, pick_rank(rng), rng));
    inst.costs.push_back(draw(rng, costs));
  }
  inst.meta = gen_meta("dense", seed);
  return inst;
}

IntegerInstance gen_integer(Index n, std::size_t m, std::int64_t bound, std::uint64_t seed, Range costs) {
  if (n < 1 || m < 1 || bound < 1) throw InvalidInstance("gen_integer needs n, m, bound >= 1");
  Rng rng(seed);
  std::bernoulli_distribution zero(0.5);
  IntegerInstance inst;
  inst.n = n;
  inst.entry_bound = bound;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::int64_t> a(static_cast<std::size_t>(n * n));
    for (auto& v : a) {
      const std::int64_t x = draw(rng, {-bound, bound});
      v = zero(rng) ? 0 : x;
    }
    inst.mats.push_back(std::move(a));
    inst.costs.push_back(draw(rng, costs));
  }
  inst.meta = gen_meta("integer", seed);
  return inst;
}

PartitionedInstance gen_2x2(Index n, std::uint64_t seed, const std::vector<int>& rank_profile, Range costs,
                            PrimeModulus mod) {
  if (n < 1) throw InvalidInstance("n must be at least 1");
  if (static_cast<Index>(rank_profile.size()) != n * n) throw DimensionMismatch("rank profile must have n^2 entries");
  Rng rng(seed);
  PartitionedInstance out;
  out.modulus = mod;
  out.n = n;
  for (int r : rank_profile) {
    if (r < 0 || r > 2) throw InvalidInstance("block rank must be 0, 1 or 2");
    out.blocks.push_back(random_of_rank(mod, 2, r, rng));
    out.costs.push_back(draw(rng, costs));
  }
  out.meta = gen_meta("partitioned2x2", seed);
  return out;
}

std::vector<int> random_rank_profile(Index n, std::uint64_t seed) {
  Rng rng(seed);
  std::discrete_distribution<int> pick({2.0, 3.0, 3.0});
  std::vector<int> profile(static_cast<std::size_t>(n * n));
  for (auto& r : profile) r = pick(rng);
  return profile;
}

Instance identity_instance(Index n, std::int64_t cost, PrimeModulus mod) {
  Instance inst;
  inst.modulus = mod;
  inst.n = n;
  inst.mats = {FieldMatrix::identity(mod, n)};
  inst.costs = {cost};
  inst.meta = {{"generator", "identity"}};
  return inst;
}

Instance skew3(const std::vector<std::int64_t>& costs, PrimeModulus mod) {
  if (costs.size() != 3) throw InvalidInstance("skew3 takes three costs");
  Instance inst;
  inst.modulus = mod;
  inst.n = 3;
  const std::pair<Index, Index> pairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto [i, j] : pairs) {
    FieldMatrix a(mod, 3, 3);
    a.set(i, j, 1);
    a.set(j, i, mod.neg(1));
    inst.mats.push_back(std::move(a));
  }
  inst.costs = costs;
  inst.meta = {{"generator", "skew3"}};
  return inst;
}

WeightGrid bipartite_fixture3() {
  return {{3, 1, 0}, {1, 2, 1}, {0, 1, 3}};
}

}  // namespace degdet
