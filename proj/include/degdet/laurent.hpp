#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "degdet/field_matrix.hpp"

namespace degdet {

/// Matrix-valued Laurent series in t^{-1}, truncated: sum_d coeff(d) t^d over
/// d <= 0. Absent degrees are zero; zero coefficients are never stored.
class LaurentMatrix {
 public:
  using Coefficients = std::map<std::int64_t, FieldMatrix, std::greater<>>;

  LaurentMatrix() = default;
  LaurentMatrix(PrimeModulus mod, Index n) : mod_(mod), n_(n) {}
  /// m * t^degree.
  static LaurentMatrix monomial(const FieldMatrix& m, std::int64_t degree);

  Index dim() const noexcept { return n_; }
  PrimeModulus modulus() const noexcept { return mod_; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Lowest stored degree (0 when empty).
  std::int64_t lowest_degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  /// Coefficient at `degree`; zero matrix when absent.
  FieldMatrix coefficient(std::int64_t degree) const;
  /// Adds m t^degree. Throws PositiveDegree for a nonzero m with degree > 0.
  void add(std::int64_t degree, const FieldMatrix& m);

  friend bool operator==(const LaurentMatrix&, const LaurentMatrix&) = default;

 private:
  friend class LaurentPencil;
  PrimeModulus mod_;
  Index n_ = 0;
  Coefficients coeffs_;
};

/// B = sum_k B_k(t) x_k.
class LaurentPencil {
 public:
  LaurentPencil() = default;
  explicit LaurentPencil(std::vector<LaurentMatrix> terms);

  Index dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  PrimeModulus modulus() const noexcept { return mod_; }
  const std::vector<LaurentMatrix>& terms() const noexcept { return terms_; }
  const LaurentMatrix& term(std::size_t k) const { return terms_.at(k); }

  friend bool operator==(const LaurentPencil&, const LaurentPencil&) = default;

 private:
  PrimeModulus mod_;
  Index n_ = 0;
  std::vector<LaurentMatrix> terms_;
};

/// Degree-0 coefficient of every term.
std::vector<FieldMatrix> leading(const LaurentPencil& pencil);

/// B_k <- (t^{1_r}) S B_k T (t^{-1_{n-s}}) with S = `left`, T = `right`:
/// rows 0..r-1 gain one degree, columns 0..n-s-1 lose one. Throws
/// PositiveDegree if a nonzero entry would land above degree 0.
LaurentPencil step_update(const LaurentPencil& pencil, const FieldMatrix& left, const FieldMatrix& right,
                          Index r, Index s);

/// B_k(t) <- B_k(t^2).
LaurentPencil square_substitute(const LaurentPencil& pencil);
LaurentMatrix square_substitute(const LaurentMatrix& m);

/// B_k <- t^{-1} B_k.
LaurentMatrix scale_tinv(const LaurentMatrix& m);

/// Drops every coefficient of degree <= -depth.
LaurentPencil truncate(const LaurentPencil& pencil, std::int64_t depth);
LaurentMatrix truncate(const LaurentMatrix& m, std::int64_t depth);

}  // namespace degdet
