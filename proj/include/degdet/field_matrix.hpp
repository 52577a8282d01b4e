#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "degdet/field.hpp"

namespace degdet {

using Index = Eigen::Index;

/// Dense matrix over GF(p). Entries are residues in [0, p) held in a row-major
/// Eigen array; arithmetic is explicit modular arithmetic, never Eigen's.
class FieldMatrix {
 public:
  using Storage = Eigen::Matrix<Residue, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  FieldMatrix() = default;
  FieldMatrix(PrimeModulus mod, Index rows, Index cols);

  static FieldMatrix identity(PrimeModulus mod, Index n);
  /// The matrix unit E_ij (zero-based).
  static FieldMatrix unit(PrimeModulus mod, Index rows, Index cols, Index i, Index j);
  /// Row-major signed integers, each reduced mod p.
  static FieldMatrix from_integers(PrimeModulus mod, Index rows, Index cols,
                                   std::span<const std::int64_t> row_major);
  static FieldMatrix random(PrimeModulus mod, Index rows, Index cols, Rng& rng);

  Index rows() const noexcept { return data_.rows(); }
  Index cols() const noexcept { return data_.cols(); }
  PrimeModulus modulus() const noexcept { return mod_; }

  Residue operator()(Index i, Index j) const { return data_(i, j); }
  /// Stores `v mod p`.
  void set(Index i, Index j, Residue v) { data_(i, j) = v % mod_.value(); }

  const Storage& coeffs() const noexcept { return data_; }
  Storage& coeffs() noexcept { return data_; }

  bool is_zero() const;
  FieldMatrix transpose() const;
  FieldMatrix block(Index row, Index col, Index rows, Index cols) const;
  void set_block(Index row, Index col, const FieldMatrix& m);

  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  PrimeModulus mod_;
  Storage data_;
};

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scaled(const FieldMatrix& m, Residue s);
/// acc += s * m
void add_scaled(FieldMatrix& acc, const FieldMatrix& m, Residue s);
/// Kronecker product a (x) b.
FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);

struct RowEchelon {
  FieldMatrix reduced;    ///< reduced row-echelon form R
  FieldMatrix transform;  ///< invertible U with U * M = R
  Index rank = 0;
  std::vector<Index> pivots;  ///< pivot column of each of the first `rank` rows
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry in column order.
RowEchelon rref(const FieldMatrix& m);
Index rank(const FieldMatrix& m);
Residue determinant(const FieldMatrix& m);

/// A subspace of GF(p)^ambient. The basis is canonical: its columns, read as
/// rows, are in reduced row-echelon form, so equal subspaces compare equal.
class Subspace {
 public:
  Subspace() = default;
  /// The zero subspace.
  Subspace(PrimeModulus mod, Index ambient);

  static Subspace full(PrimeModulus mod, Index ambient);
  /// Span of the columns of `generators`.
  static Subspace span_of(const FieldMatrix& generators);

  Index ambient_dim() const noexcept { return ambient_; }
  Index dim() const noexcept { return basis_.cols(); }
  PrimeModulus modulus() const noexcept { return basis_.modulus(); }
  /// ambient x dim, columns independent.
  const FieldMatrix& basis() const noexcept { return basis_; }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }

  bool contains(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  friend class EchelonBasis;
  Index ambient_ = 0;
  FieldMatrix basis_;
  std::vector<Index> pivots_;
};

/// Incrementally maintained reduced echelon basis; `insert` is O(dim * ambient).
class EchelonBasis {
 public:
  EchelonBasis(PrimeModulus mod, Index ambient);

  /// Adds v to the span. Returns true if the dimension grew.
  bool insert(std::span<const Residue> v);
  bool insert(const FieldMatrix& column) { return insert(std::span<const Residue>(column.coeffs().data(), column.coeffs().size())); }
  bool contains(std::span<const Residue> v) const;

  Index dim() const noexcept { return static_cast<Index>(rows_.size()); }
  Index ambient_dim() const noexcept { return ambient_; }
  Subspace to_subspace() const;

 private:
  void reduce(std::vector<Residue>& v) const;

  PrimeModulus mod_;
  Index ambient_;
  std::vector<std::vector<Residue>> rows_;  // sorted by pivot
  std::vector<Index> pivots_;
};

Subspace nullspace(const FieldMatrix& m);
/// Column space.
Subspace image(const FieldMatrix& m);
/// {x : m x in w}.
Subspace preimage(const FieldMatrix& m, const Subspace& w);
/// span { B u : B in mats, u in basis(u) }.
Subspace span_union(std::span<const FieldMatrix> mats, const Subspace& u);
/// {y : y^T w = 0 for all w in w}.
Subspace annihilator(const Subspace& w);
/// Unit columns e_i for the non-pivot coordinates of `s`; together with
/// s.basis() they form a basis of the ambient space.
FieldMatrix completion(const Subspace& s);

}  // namespace degdet
