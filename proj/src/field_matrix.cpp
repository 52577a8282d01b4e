#include "degdet/field_matrix.hpp"

#include <algorithm>
#include <string>

#include "degdet/errors.hpp"

namespace degdet {

namespace {

void check_same_modulus(const FieldMatrix& a, const FieldMatrix& b) {
  if (!(a.modulus() == b.modulus())) throw DimensionMismatch("operands live over different fields");
}

std::string shape(const FieldMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

FieldMatrix::FieldMatrix(PrimeModulus mod, Index rows, Index cols)
    : mod_(mod), data_(Storage::Zero(rows, cols)) {}

FieldMatrix FieldMatrix::identity(PrimeModulus mod, Index n) {
  FieldMatrix m(mod, n, n);
  for (Index i = 0; i < n; ++i) m.data_(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::unit(PrimeModulus mod, Index rows, Index cols, Index i, Index j) {
  FieldMatrix m(mod, rows, cols);
  m.data_(i, j) = 1;
  return m;
}

FieldMatrix FieldMatrix::from_integers(PrimeModulus mod, Index rows, Index cols,
                                       std::span<const std::int64_t> row_major) {
  if (static_cast<Index>(row_major.size()) != rows * cols)
    throw DimensionMismatch("entry count does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  FieldMatrix m(mod, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.data_(i, j) = mod.reduce(row_major[i * cols + j]);
  return m;
}

FieldMatrix FieldMatrix::random(PrimeModulus mod, Index rows, Index cols, Rng& rng) {
  FieldMatrix m(mod, rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m.data_(i, j) = random_residue(rng, mod);
  return m;
}

bool FieldMatrix::is_zero() const {
  for (Index k = 0; k < data_.size(); ++k)
    if (data_.data()[k] != 0) return false;
  return true;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(mod_, cols(), rows());
  t.data_ = data_.transpose();
  return t;
}

FieldMatrix FieldMatrix::block(Index row, Index col, Index rows, Index cols) const {
  FieldMatrix b(mod_, rows, cols);
  b.data_ = data_.block(row, col, rows, cols);
  return b;
}

void FieldMatrix::set_block(Index row, Index col, const FieldMatrix& m) {
  data_.block(row, col, m.rows(), m.cols()) = m.data_;
}

bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
  return a.mod_ == b.mod_ && a.rows() == b.rows() && a.cols() == b.cols() && a.data_ == b.data_;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_modulus(a, b);
  if (a.cols() != b.rows()) throw DimensionMismatch("product " + shape(a) + " * " + shape(b));
  const PrimeModulus mod = a.modulus();
  const std::uint64_t p = mod.value();
  const Index n = a.rows(), inner = a.cols(), m = b.cols();
  FieldMatrix out(mod, n, m);
  // Products of residues below 2^32 fit 2^64 times into an unsigned 128-bit
  // accumulator; larger moduli reduce after every term.
  const bool lazy = p < (std::uint64_t{1} << 32);
  std::vector<unsigned __int128> acc(static_cast<std::size_t>(m));
  const auto& A = a.coeffs();
  const auto& B = b.coeffs();
  auto& C = out.coeffs();
  for (Index i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    bool any = false;
    for (Index k = 0; k < inner; ++k) {
      const Residue x = A(i, k);
      if (x == 0) continue;
      any = true;
      const Residue* row = B.data() + k * m;
      if (lazy) {
        for (Index j = 0; j < m; ++j) acc[j] += static_cast<unsigned __int128>(x) * row[j];
      } else {
        for (Index j = 0; j < m; ++j) acc[j] = (acc[j] + static_cast<unsigned __int128>(x) * row[j]) % p;
      }
    }
    if (!any) continue;
    for (Index j = 0; j < m; ++j) C(i, j) = static_cast<Residue>(acc[j] % p);
  }
  return out;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_modulus(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("sum " + shape(a) + " + " + shape(b));
  FieldMatrix out = a;
  const PrimeModulus mod = a.modulus();
  for (Index k = 0; k < out.coeffs().size(); ++k)
    out.coeffs().data()[k] = mod.add(out.coeffs().data()[k], b.coeffs().data()[k]);
  return out;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_modulus(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("difference " + shape(a) + " - " + shape(b));
  FieldMatrix out = a;
  const PrimeModulus mod = a.modulus();
  for (Index k = 0; k < out.coeffs().size(); ++k)
    out.coeffs().data()[k] = mod.sub(out.coeffs().data()[k], b.coeffs().data()[k]);
  return out;
}

FieldMatrix scaled(const FieldMatrix& m, Residue s) {
  FieldMatrix out = m;
  const PrimeModulus mod = m.modulus();
  for (Index k = 0; k < out.coeffs().size(); ++k) out.coeffs().data()[k] = mod.mul(out.coeffs().data()[k], s);
  return out;
}

void add_scaled(FieldMatrix& acc, const FieldMatrix& m, Residue s) {
  check_same_modulus(acc, m);
  if (acc.rows() != m.rows() || acc.cols() != m.cols()) throw DimensionMismatch("add_scaled " + shape(acc) + " += " + shape(m));
  if (s == 0) return;
  const PrimeModulus mod = m.modulus();
  Residue* out = acc.coeffs().data();
  const Residue* in = m.coeffs().data();
  for (Index k = 0; k < acc.coeffs().size(); ++k)
    if (in[k] != 0) out[k] = mod.add(out[k], mod.mul(in[k], s));
}

FieldMatrix kron(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_modulus(a, b);
  const PrimeModulus mod = a.modulus();
  FieldMatrix out(mod, a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      const Residue x = a(i, j);
      if (x == 0) continue;
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l)
          out.coeffs()(i * b.rows() + k, j * b.cols() + l) = mod.mul(x, b(k, l));
    }
  return out;
}

FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_modulus(a, b);
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack " + shape(a) + " | " + shape(b));
  FieldMatrix out(a.modulus(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

namespace {

// In-place Gauss-Jordan on `work`; rows of `companion` receive the same
// operations when non-null. Returns pivot columns.
std::vector<Index> eliminate(FieldMatrix& work, FieldMatrix* companion) {
  const PrimeModulus mod = work.modulus();
  auto& W = work.coeffs();
  const Index rows = work.rows(), cols = work.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index sel = -1;
    for (Index i = r; i < rows; ++i)
      if (W(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r) {
      W.row(sel).swap(W.row(r));
      if (companion) companion->coeffs().row(sel).swap(companion->coeffs().row(r));
    }
    const Residue inv = mod.inv(W(r, c));
    for (Index j = c; j < cols; ++j) W(r, j) = mod.mul(W(r, j), inv);
    if (companion)
      for (Index j = 0; j < companion->cols(); ++j) companion->coeffs()(r, j) = mod.mul(companion->coeffs()(r, j), inv);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || W(i, c) == 0) continue;
      const Residue f = mod.neg(W(i, c));
      for (Index j = c; j < cols; ++j)
        if (W(r, j) != 0) W(i, j) = mod.add(W(i, j), mod.mul(f, W(r, j)));
      if (companion) {
        auto& U = companion->coeffs();
        for (Index j = 0; j < U.cols(); ++j)
          if (U(r, j) != 0) U(i, j) = mod.add(U(i, j), mod.mul(f, U(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

RowEchelon rref(const FieldMatrix& m) {
  RowEchelon out;
  out.reduced = m;
  out.transform = FieldMatrix::identity(m.modulus(), m.rows());
  out.pivots = eliminate(out.reduced, &out.transform);
  out.rank = static_cast<Index>(out.pivots.size());
  return out;
}

Index rank(const FieldMatrix& m) {
  FieldMatrix work = m;
  return static_cast<Index>(eliminate(work, nullptr).size());
}

Residue determinant(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square " + shape(m));
  const PrimeModulus mod = m.modulus();
  FieldMatrix work = m;
  auto& W = work.coeffs();
  const Index n = m.rows();
  Residue det = 1;
  for (Index c = 0; c < n; ++c) {
    Index sel = -1;
    for (Index i = c; i < n; ++i)
      if (W(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel < 0) return 0;
    if (sel != c) {
      W.row(sel).swap(W.row(c));
      det = mod.neg(det);
    }
    det = mod.mul(det, W(c, c));
    const Residue inv = mod.inv(W(c, c));
    for (Index i = c + 1; i < n; ++i) {
      if (W(i, c) == 0) continue;
      const Residue f = mod.neg(mod.mul(W(i, c), inv));
      for (Index j = c; j < n; ++j)
        if (W(c, j) != 0) W(i, j) = mod.add(W(i, j), mod.mul(f, W(c, j)));
    }
  }
  return det;
}

// ---------------------------------------------------------------------------

Subspace::Subspace(PrimeModulus mod, Index ambient) : ambient_(ambient), basis_(mod, ambient, 0) {}

Subspace Subspace::full(PrimeModulus mod, Index ambient) {
  Subspace s(mod, ambient);
  s.basis_ = FieldMatrix::identity(mod, ambient);
  s.pivots_.resize(static_cast<std::size_t>(ambient));
  for (Index i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::span_of(const FieldMatrix& generators) {
  EchelonBasis eb(generators.modulus(), generators.rows());
  std::vector<Residue> col(static_cast<std::size_t>(generators.rows()));
  for (Index j = 0; j < generators.cols(); ++j) {
    for (Index i = 0; i < generators.rows(); ++i) col[i] = generators(i, j);
    eb.insert(col);
  }
  return eb.to_subspace();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
  if (other.dim() > dim()) return false;
  EchelonBasis eb(modulus(), ambient_);
  std::vector<Residue> col(static_cast<std::size_t>(ambient_));
  for (Index j = 0; j < dim(); ++j) {
    for (Index i = 0; i < ambient_; ++i) col[i] = basis_(i, j);
    eb.insert(col);
  }
  for (Index j = 0; j < other.dim(); ++j) {
    for (Index i = 0; i < ambient_; ++i) col[i] = other.basis_(i, j);
    if (!eb.contains(col)) return false;
  }
  return true;
}

EchelonBasis::EchelonBasis(PrimeModulus mod, Index ambient) : mod_(mod), ambient_(ambient) {}

void EchelonBasis::reduce(std::vector<Residue>& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Index c = pivots_[r];
    const Residue x = v[c];
    if (x == 0) continue;
    const Residue f = mod_.neg(x);
    const auto& row = rows_[r];
    for (Index j = c; j < ambient_; ++j)
      if (row[j] != 0) v[j] = mod_.add(v[j], mod_.mul(f, row[j]));
  }
}

bool EchelonBasis::contains(std::span<const Residue> v) const {
  if (static_cast<Index>(v.size()) != ambient_) throw DimensionMismatch("vector length does not match ambient space");
  std::vector<Residue> w(v.begin(), v.end());
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](Residue x) { return x == 0; });
}

bool EchelonBasis::insert(std::span<const Residue> v) {
  if (static_cast<Index>(v.size()) != ambient_) throw DimensionMismatch("vector length does not match ambient space");
  if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) return false;
  std::vector<Residue> w(v.begin(), v.end());
  reduce(w);
  Index c = 0;
  while (c < ambient_ && w[c] == 0) ++c;
  if (c == ambient_) return false;
  const Residue inv = mod_.inv(w[c]);
  for (Index j = c; j < ambient_; ++j) w[j] = mod_.mul(w[j], inv);
  // Keep the basis fully reduced: clear column c from the other rows.
  for (auto& row : rows_) {
    const Residue x = row[c];
    if (x == 0) continue;
    const Residue f = mod_.neg(x);
    for (Index j = c; j < ambient_; ++j)
      if (w[j] != 0) row[j] = mod_.add(row[j], mod_.mul(f, w[j]));
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, c);
  rows_.insert(rows_.begin() + pos, std::move(w));
  return true;
}

Subspace EchelonBasis::to_subspace() const {
  Subspace s(mod_, ambient_);
  s.basis_ = FieldMatrix(mod_, ambient_, dim());
  for (Index r = 0; r < dim(); ++r)
    for (Index i = 0; i < ambient_; ++i) s.basis_.coeffs()(i, r) = rows_[r][i];
  s.pivots_ = pivots_;
  return s;
}

Subspace nullspace(const FieldMatrix& m) {
  const PrimeModulus mod = m.modulus();
  FieldMatrix work = m;
  const auto pivots = eliminate(work, nullptr);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivots) is_pivot[c] = true;
  EchelonBasis eb(mod, cols);
  std::vector<Residue> v(static_cast<std::size_t>(cols));
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = mod.neg(work(static_cast<Index>(r), f));
    eb.insert(v);
  }
  return eb.to_subspace();
}

Subspace image(const FieldMatrix& m) { return Subspace::span_of(m); }

Subspace annihilator(const Subspace& w) {
  if (w.dim() == 0) return Subspace::full(w.modulus(), w.ambient_dim());
  return nullspace(w.basis().transpose());
}

Subspace preimage(const FieldMatrix& m, const Subspace& w) {
  if (w.ambient_dim() != m.rows())
    throw DimensionMismatch("preimage: subspace of dim-" + std::to_string(w.ambient_dim()) + " space under " + shape(m));
  const Subspace ann = annihilator(w);
  if (ann.dim() == 0) return Subspace::full(m.modulus(), m.cols());
  return nullspace(ann.basis().transpose() * m);
}

Subspace span_union(std::span<const FieldMatrix> mats, const Subspace& u) {
  const Index out_dim = mats.empty() ? u.ambient_dim() : mats.front().rows();
  EchelonBasis eb(u.modulus(), out_dim);
  for (const auto& b : mats) {
    if (b.cols() != u.ambient_dim() || b.rows() != out_dim)
      throw DimensionMismatch("span_union: matrix " + shape(b) + " on dim-" + std::to_string(u.ambient_dim()) + " subspace");
    const FieldMatrix img = b * u.basis();
    std::vector<Residue> col(static_cast<std::size_t>(out_dim));
    for (Index j = 0; j < img.cols(); ++j) {
      for (Index i = 0; i < out_dim; ++i) col[i] = img(i, j);
      eb.insert(col);
    }
  }
  return eb.to_subspace();
}

FieldMatrix completion(const Subspace& s) {
  const Index n = s.ambient_dim();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : s.pivots()) is_pivot[c] = true;
  FieldMatrix out(s.modulus(), n, n - s.dim());
  Index k = 0;
  for (Index i = 0; i < n; ++i)
    if (!is_pivot[i]) out.coeffs()(i, k++) = 1;
  return out;
}

}  // namespace degdet
