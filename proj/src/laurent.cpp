#include "degdet/laurent.hpp"

#include <string>

#include "degdet/errors.hpp"

namespace degdet {

LaurentMatrix LaurentMatrix::monomial(const FieldMatrix& m, std::int64_t degree) {
  if (m.rows() != m.cols()) throw DimensionMismatch("Laurent coefficients must be square");
  LaurentMatrix out(m.modulus(), m.rows());
  out.add(degree, m);
  return out;
}

FieldMatrix LaurentMatrix::coefficient(std::int64_t degree) const {
  auto it = coeffs_.find(degree);
  return it == coeffs_.end() ? FieldMatrix(mod_, n_, n_) : it->second;
}

void LaurentMatrix::add(std::int64_t degree, const FieldMatrix& m) {
  if (m.rows() != n_ || m.cols() != n_) throw DimensionMismatch("coefficient size does not match Laurent matrix");
  if (m.is_zero()) return;
  if (degree > 0) throw PositiveDegree("nonzero coefficient at degree " + std::to_string(degree));
  auto [it, inserted] = coeffs_.try_emplace(degree, m);
  if (!inserted) {
    it->second = it->second + m;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

LaurentPencil::LaurentPencil(std::vector<LaurentMatrix> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) return;
  mod_ = terms_.front().modulus();
  n_ = terms_.front().dim();
  for (const auto& t : terms_)
    if (t.dim() != n_ || !(t.modulus() == mod_)) throw DimensionMismatch("pencil terms disagree in size or field");
}

std::vector<FieldMatrix> leading(const LaurentPencil& pencil) {
  std::vector<FieldMatrix> out;
  out.reserve(pencil.size());
  for (const auto& t : pencil.terms()) out.push_back(t.coefficient(0));
  return out;
}

LaurentPencil step_update(const LaurentPencil& pencil, const FieldMatrix& left, const FieldMatrix& right,
                          Index r, Index s) {
  const Index n = pencil.dim();
  if (left.rows() != n || left.cols() != n || right.rows() != n || right.cols() != n)
    throw DimensionMismatch("step_update transforms must be n x n");
  if (r < 0 || r > n || s < 0 || s > n) throw DimensionMismatch("step_update block sizes out of range");
  const PrimeModulus mod = pencil.modulus();
  const Index lowered = n - s;  // columns 0..lowered-1 lose a degree
  std::vector<LaurentMatrix> terms;
  terms.reserve(pencil.size());
  for (const auto& term : pencil.terms()) {
    LaurentMatrix::Coefficients out;
    auto slot = [&](std::int64_t d) -> FieldMatrix& {
      auto it = out.find(d);
      if (it == out.end()) it = out.emplace(d, FieldMatrix(mod, n, n)).first;
      return it->second;
    };
    for (const auto& [d, m] : term.coefficients()) {
      const FieldMatrix x = left * m * right;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
          const Residue v = x(i, j);
          if (v == 0) continue;
          const std::int64_t shift = (i < r ? 1 : 0) - (j < lowered ? 1 : 0);
          const std::int64_t target = d + shift;
          if (target > 0)
            throw PositiveDegree("entry (" + std::to_string(i) + "," + std::to_string(j) + ") would reach degree " +
                                 std::to_string(target));
          auto& dst = slot(target).coeffs()(i, j);
          dst = mod.add(dst, v);
        }
    }
    LaurentMatrix updated(mod, n);
    for (auto& [d, m] : out)
      if (!m.is_zero()) updated.add(d, m);
    terms.push_back(std::move(updated));
  }
  return LaurentPencil(std::move(terms));
}

LaurentMatrix square_substitute(const LaurentMatrix& m) {
  LaurentMatrix out(m.modulus(), m.dim());
  for (const auto& [d, c] : m.coefficients()) out.add(2 * d, c);
  return out;
}

LaurentPencil square_substitute(const LaurentPencil& pencil) {
  std::vector<LaurentMatrix> terms;
  terms.reserve(pencil.size());
  for (const auto& t : pencil.terms()) terms.push_back(square_substitute(t));
  return LaurentPencil(std::move(terms));
}

LaurentMatrix scale_tinv(const LaurentMatrix& m) {
  LaurentMatrix out(m.modulus(), m.dim());
  for (const auto& [d, c] : m.coefficients()) out.add(d - 1, c);
  return out;
}

LaurentMatrix truncate(const LaurentMatrix& m, std::int64_t depth) {
  LaurentMatrix out(m.modulus(), m.dim());
  for (const auto& [d, c] : m.coefficients())
    if (d > -depth) out.add(d, c);
  return out;
}

LaurentPencil truncate(const LaurentPencil& pencil, std::int64_t depth) {
  std::vector<LaurentMatrix> terms;
  terms.reserve(pencil.size());
  for (const auto& t : pencil.terms()) terms.push_back(truncate(t, depth));
  return LaurentPencil(std::move(terms));
}

}  // namespace degdet
