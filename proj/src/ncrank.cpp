#include "degdet/ncrank.hpp"

#include <optional>
#include <string>

#include "degdet/errors.hpp"

namespace degdet {

ConstPencil::ConstPencil(Index dim, std::vector<FieldMatrix> coefficients) : n(dim), mats(std::move(coefficients)) {
  if (mats.empty()) throw InvalidInstance("pencil needs at least one coefficient matrix");
  for (const auto& m : mats) {
    if (m.rows() != n || m.cols() != n) throw DimensionMismatch("pencil coefficients must be n x n");
    if (!(m.modulus() == mats.front().modulus())) throw DimensionMismatch("pencil coefficients over different fields");
  }
}

namespace {

// Nonzero entries of one coefficient; the oracle's inner loops only touch these.
struct SparseMatrix {
  std::vector<Index> row, col;
  std::vector<Residue> val;

  explicit SparseMatrix(const FieldMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) {
          row.push_back(i);
          col.push_back(j);
          val.push_back(m(i, j));
        }
  }

  void apply(PrimeModulus mod, std::span<const Residue> x, std::vector<Residue>& y) const {
    std::fill(y.begin(), y.end(), 0);
    for (std::size_t e = 0; e < val.size(); ++e) {
      const Residue v = x[col[e]];
      if (v != 0) y[row[e]] = mod.add(y[row[e]], mod.mul(val[e], v));
    }
  }
};

std::vector<Residue> column(const FieldMatrix& m, Index j) {
  std::vector<Residue> c(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

FieldMatrix random_point(const ConstPencil& pencil, const std::vector<SparseMatrix>& sparse, Rng& rng) {
  const PrimeModulus mod = pencil.modulus();
  FieldMatrix b(mod, pencil.n, pencil.n);
  for (const auto& sm : sparse) {
    const Residue lambda = random_residue(rng, mod);
    if (lambda == 0) continue;
    for (std::size_t e = 0; e < sm.val.size(); ++e) {
      auto& dst = b.coeffs()(sm.row[e], sm.col[e]);
      dst = mod.add(dst, mod.mul(lambda, sm.val[e]));
    }
  }
  return b;
}

Certificate build_certificate(PrimeModulus mod, Index n, const Subspace& w_limit, const Subspace& u) {
  const Subspace ann = annihilator(w_limit);
  Certificate cert;
  cert.r = ann.dim();
  cert.s = u.dim();
  cert.value = 2 * n - cert.r - cert.s;
  cert.left = FieldMatrix(mod, n, n);
  cert.left.set_block(0, 0, ann.basis().transpose());
  cert.left.set_block(cert.r, 0, completion(ann).transpose());
  cert.right = hstack(completion(u), u.basis());
  return cert;
}

// Second Wong sequence W_{j+1} = sum_k B_k B^{-1}(W_j) from W_0 = {0}.
// Succeeds iff the limit stays inside im B.
std::optional<Certificate> wong_certificate(const ConstPencil& pencil, const std::vector<SparseMatrix>& sparse,
                                            const FieldMatrix& b, Index rank_b) {
  const PrimeModulus mod = pencil.modulus();
  const Index n = pencil.n;
  EchelonBasis image_b(mod, n);
  for (Index j = 0; j < n; ++j) image_b.insert(column(b, j));

  EchelonBasis w(mod, n);
  EchelonBasis processed(mod, n);
  std::vector<Residue> img(static_cast<std::size_t>(n));
  for (;;) {
    const Subspace u = preimage(b, w.to_subspace());
    const Index before = w.dim();
    for (Index j = 0; j < u.dim(); ++j) {
      const auto uj = column(u.basis(), j);
      if (!processed.insert(uj)) continue;
      for (const auto& sm : sparse) {
        sm.apply(mod, uj, img);
        if (w.insert(img) && !image_b.contains(img)) return std::nullopt;
      }
    }
    if (w.dim() == before) break;
  }
  const Subspace w_limit = w.to_subspace();
  Certificate cert = build_certificate(mod, n, w_limit, preimage(b, w_limit));
  if (cert.value != rank_b)
    throw NcRankGap("Wong limit gives value " + std::to_string(cert.value) + " at a rank-" + std::to_string(rank_b) +
                    " point");
  return cert;
}

}  // namespace

bool is_valid_certificate(const ConstPencil& pencil, const Certificate& cert) {
  const Index n = pencil.n;
  if (cert.r < 0 || cert.s < 0 || cert.r > n || cert.s > n) return false;
  if (cert.value != 2 * n - cert.r - cert.s) return false;
  if (rank(cert.left) != n || rank(cert.right) != n) return false;
  for (const auto& m : pencil.mats) {
    const FieldMatrix x = cert.left * m * cert.right;
    for (Index i = 0; i < cert.r; ++i)
      for (Index j = n - cert.s; j < n; ++j)
        if (x(i, j) != 0) return false;
  }
  return true;
}

Certificate solve_R(const ConstPencil& pencil, std::uint64_t seed, int retries) {
  if (retries < 1) throw InvalidInstance("solve_R needs at least one attempt");
  const PrimeModulus mod = pencil.modulus();
  const Index n = pencil.n;
  std::vector<SparseMatrix> sparse;
  for (const auto& m : pencil.mats) {
    SparseMatrix sm(m);
    if (!sm.val.empty()) sparse.push_back(std::move(sm));
  }
  Rng rng(seed);
  Index best = -1;
  for (int attempt = 0; attempt < retries; ++attempt) {
    const FieldMatrix b = random_point(pencil, sparse, rng);
    const Index rho = rank(b);
    if (rho == n) {
      return Certificate{FieldMatrix::identity(mod, n), FieldMatrix::identity(mod, n), 0, n, n};
    }
    if (rho < best) continue;
    best = rho;
    if (auto cert = wong_certificate(pencil, sparse, b, rho)) return *cert;
  }
  throw NcRankGap("Wong sequence left the image at every sampled point (best rank " + std::to_string(best) + " of " +
                  std::to_string(n) + ")");
}

Index random_substitution_rank(const ConstPencil& pencil, Rng& rng) {
  const PrimeModulus mod = pencil.modulus();
  FieldMatrix b(mod, pencil.n, pencil.n);
  for (const auto& m : pencil.mats) add_scaled(b, m, random_residue(rng, mod));
  return rank(b);
}

BlowupPencil build_blowup(const ConstPencil& pencil, Index d) {
  if (d < 1) throw InvalidInstance("blow-up order must be positive");
  const PrimeModulus mod = pencil.modulus();
  BlowupPencil out;
  out.d = d;
  out.base_n = pencil.n;
  out.mats.reserve(pencil.mats.size() * static_cast<std::size_t>(d * d));
  for (std::size_t k = 0; k < pencil.mats.size(); ++k)
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) {
        out.mats.push_back(kron(FieldMatrix::unit(mod, d, d, i, j), pencil.mats[k]));
        out.source_term.push_back(k);
      }
  return out;
}

bool is_nc_nonsingular(const ConstPencil& pencil, std::uint64_t seed) {
  const PrimeModulus mod = pencil.modulus();
  const Index n = pencil.n;
  Rng rng(seed);
  // rank <= nc-rank, so a full-rank point already decides.
  if (random_substitution_rank(pencil, rng) == n) return true;
  const Index d = blowup_order(n);
  if (d == 1) return false;
  FieldMatrix big(mod, n * d, n * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      FieldMatrix blk(mod, n, n);
      for (const auto& m : pencil.mats) add_scaled(blk, m, random_residue(rng, mod));
      big.set_block(i * n, j * n, blk);
    }
  return rank(big) == n * d;
}

}  // namespace degdet
