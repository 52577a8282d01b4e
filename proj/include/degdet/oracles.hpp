#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "degdet/instance.hpp"

namespace degdet {

/// deg det A[c] of the commutative determinant: random scalars for the x_k,
/// evaluation at n C + 1 distinct points t = g^j, interpolation, max degree
/// over `trials`. Each trial can only undershoot.
Degree degdet_commutative(const Instance& inst, std::uint64_t seed, int trials = 3);

/// deg Det via the (n-1)-blow-up: deg det A^{{d}}[c] / d. Resamples when the
/// blow-up degree is not a multiple of d; throws RetryExhausted after
/// `retries` attempts.
Degree degdet_blowup(const Instance& inst, std::uint64_t seed, int retries = 4);

/// Instance whose terms are the blow-up variables x_{k,ij}, each carrying c_k.
Instance blowup_instance(const Instance& inst, Index d);

/// n x n weights, std::nullopt for absent edges.
using WeightGrid = std::vector<std::vector<std::optional<std::int64_t>>>;

/// Maximum weight perfect matching; MINUS_INFINITY when none exists.
Degree hungarian(const WeightGrid& weights);

/// Recognises instances whose every term is a scalar multiple of one matrix
/// unit E_ij; multiple terms on one cell keep the largest cost.
std::optional<WeightGrid> bipartite_weights(const Instance& inst);

/// Exponent vector u (length m) of a monomial of det A.
using ExponentVector = std::vector<int>;

struct NewtonSupport {
  /// Exponents of the monomials of det sum_k A_k x_k with nonzero coefficient.
  std::vector<ExponentVector> exponents;
  /// max c^T u over `exponents`; MINUS_INFINITY if det is identically zero.
  Degree lp(const std::vector<std::int64_t>& costs) const;
};

/// Symbolic permutation expansion of det A; n <= 7.
NewtonSupport newton_small(const Instance& inst);

/// Smallest g >= 2 whose first `count` powers are pairwise distinct mod p.
Residue evaluation_generator(PrimeModulus mod, std::int64_t count);

}  // namespace degdet
