#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "degdet/field_matrix.hpp"

namespace degdet {

/// A[c] = sum_k A_k x_k t^{c_k} over GF(p).
struct Instance {
  PrimeModulus modulus;
  Index n = 0;
  std::vector<FieldMatrix> mats;
  std::vector<std::int64_t> costs;
  std::map<std::string, std::string> meta;

  std::size_t m() const noexcept { return mats.size(); }
  /// Throws InvalidInstance unless m >= 1, n >= 1 and all shapes agree.
  void validate() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.modulus == b.modulus && a.n == b.n && a.mats == b.mats && a.costs == b.costs && a.meta == b.meta;
  }
};

/// Integer coefficient matrices, reduced per prime by the rational pipeline.
struct IntegerInstance {
  Index n = 0;
  /// m matrices, each n x n row-major.
  std::vector<std::vector<std::int64_t>> mats;
  std::vector<std::int64_t> costs;
  /// Declared entry bound; 0 when unknown.
  std::int64_t entry_bound = 0;
  std::map<std::string, std::string> meta;

  std::size_t m() const noexcept { return mats.size(); }
  void validate() const;
  /// max(declared bound, max |entry|, 1).
  std::int64_t effective_bound() const;
  Instance reduce(PrimeModulus mod) const;

  friend bool operator==(const IntegerInstance&, const IntegerInstance&) = default;
};

/// n x n grid of 2x2 blocks A_ij (possibly zero) with costs c_ij.
struct PartitionedInstance {
  PrimeModulus modulus;
  Index n = 0;
  std::vector<FieldMatrix> blocks;      ///< row-major n x n grid of 2x2 matrices
  std::vector<std::int64_t> costs;      ///< row-major n x n
  std::map<std::string, std::string> meta;

  const FieldMatrix& block(Index i, Index j) const { return blocks.at(static_cast<std::size_t>(i * n + j)); }
  std::int64_t cost(Index i, Index j) const { return costs.at(static_cast<std::size_t>(i * n + j)); }
  void validate() const;

  friend bool operator==(const PartitionedInstance& a, const PartitionedInstance& b) {
    return a.modulus == b.modulus && a.n == b.n && a.blocks == b.blocks && a.costs == b.costs && a.meta == b.meta;
  }
};

}  // namespace degdet
