#pragma once

#include <cstdint>
#include <vector>

#include "degdet/instance.hpp"
#include "degdet/oracles.hpp"

namespace degdet {

/// Closed integer range for random costs or entries.
struct Range {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// One term E_ij x_ij t^{c_ij} per present cell, in row-major cell order.
/// Throws InvalidInstance on an empty edge set.
Instance gen_bipartite(const WeightGrid& weights, PrimeModulus mod = {});

/// Random n x n weights; each cell present with probability `density`.
WeightGrid random_weights(Index n, double density, Range costs, std::uint64_t seed);

/// A_k = u_k v_k^T with random u_k, v_k. Requires m >= n.
Instance gen_rank1(Index n, std::size_t m, std::uint64_t seed, Range costs, PrimeModulus mod = {});

/// Random A_k of rank drawn from [1, max_rank] (0 means n).
Instance gen_dense(Index n, std::size_t m, std::uint64_t seed, Range costs, Index max_rank = 0,
                   PrimeModulus mod = {});

/// Integer entries in [-bound, bound], each zero with probability 1/2.
IntegerInstance gen_integer(Index n, std::size_t m, std::int64_t bound, std::uint64_t seed, Range costs);

/// Block (i, j) has rank rank_profile[i n + j] in {0, 1, 2}; costs random.
PartitionedInstance gen_2x2(Index n, std::uint64_t seed, const std::vector<int>& rank_profile, Range costs,
                            PrimeModulus mod = {});
/// Ranks 0, 1, 2 with probabilities 1/4, 3/8, 3/8.
std::vector<int> random_rank_profile(Index n, std::uint64_t seed);

/// c I as a single term.
Instance identity_instance(Index n, std::int64_t cost, PrimeModulus mod = {});

/// Terms E_12 - E_21, E_13 - E_31, E_23 - E_32. The pencil has rank 2 but
/// nc-rank 3.
Instance skew3(const std::vector<std::int64_t>& costs = {0, 0, 0}, PrimeModulus mod = {});

/// [[3,1,0],[1,2,1],[0,1,3]] on the full 3 x 3 grid.
WeightGrid bipartite_fixture3();

}  // namespace degdet
