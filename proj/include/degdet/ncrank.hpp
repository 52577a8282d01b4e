#pragma once

#include <cstdint>
#include <vector>

#include "degdet/field_matrix.hpp"

namespace degdet {

/// A linear pencil sum_k mats[k] x_k with constant n x n coefficients.
struct ConstPencil {
  Index n = 0;
  std::vector<FieldMatrix> mats;

  ConstPencil() = default;
  ConstPencil(Index dim, std::vector<FieldMatrix> coefficients);

  PrimeModulus modulus() const { return mats.front().modulus(); }
};

/// Invertible S, T such that every S * B_k * T vanishes on rows 0..r-1 x
/// columns n-s..n-1. `value` = 2n - r - s bounds rank of every substitution.
struct Certificate {
  FieldMatrix left;   ///< S
  FieldMatrix right;  ///< T
  Index r = 0;
  Index s = 0;
  Index value = 0;
};

/// Machine check of the zero block and of invertibility.
bool is_valid_certificate(const ConstPencil& pencil, const Certificate& cert);

/// Solves problem (R): returns an optimal certificate whenever commutative
/// rank equals nc-rank. Random points over GF(p) are drawn up to `retries`
/// times; each attempt either reaches rank n (degenerate certificate
/// S = T = I, r = 0, s = n) or runs the second Wong sequence from a point of
/// the highest rank seen so far. Throws NcRankGap when every attempt fails.
Certificate solve_R(const ConstPencil& pencil, std::uint64_t seed, int retries);

/// Default retry budget (3n).
inline int default_retries(Index n) { return static_cast<int>(3 * std::max<Index>(n, 1)); }

/// Coefficients of x_{k,ij} in the arranged d-blow-up: E_ij (x) A_k, i.e. A_k
/// placed in block row i and block column j. Variable (k, i, j) has index
/// k d^2 + i d + j.
struct BlowupPencil {
  Index d = 1;
  Index base_n = 0;
  std::vector<FieldMatrix> mats;
  /// Variable index -> base term k.
  std::vector<std::size_t> source_term;
};

BlowupPencil build_blowup(const ConstPencil& pencil, Index d);

/// Blow-up order used for nc-rank decisions: max(1, n - 1).
inline Index blowup_order(Index n) { return std::max<Index>(1, n - 1); }

/// One-sided test of nc-rank = n: rank of one random substitution of the
/// (n-1)-blow-up. A `true` answer is always correct.
bool is_nc_nonsingular(const ConstPencil& pencil, std::uint64_t seed);

/// Rank of sum_k lambda_k mats[k] at a random point.
Index random_substitution_rank(const ConstPencil& pencil, Rng& rng);

}  // namespace degdet
