#include "locext/linalg.hpp"

#include <utility>

#include "locext/errors.hpp"

namespace locext {

EchelonForm row_reduce(ExactMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  // Work on a vector of rows to allow cheap swaps.
  std::vector<ExactVector> r(rows);
  for (std::size_t i = 0; i < rows; ++i) r[i] = m.row(i);

  EchelonForm out;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows; ++col) {
    std::size_t piv = lead;
    while (piv < rows && r[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(r[piv], r[lead]);
    const GaussianRational inv = GaussianRational(1) / r[lead][col];
    for (std::size_t j = col; j < cols; ++j)
      if (!r[lead][j].is_zero()) r[lead][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == lead || r[i][col].is_zero()) continue;
      const GaussianRational f = r[i][col];
      for (std::size_t j = col; j < cols; ++j)
        if (!r[lead][j].is_zero()) r[i][j] -= f * r[lead][j];
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.reduced = ExactMatrix::from_rows(r, cols);
  return out;
}

Subspace Subspace::span(const std::vector<ExactVector>& vectors, std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  EchelonForm e = row_reduce(ExactMatrix::from_rows(vectors, ambient_dim));
  for (std::size_t i = 0; i < e.rank(); ++i) s.basis_.push_back(e.reduced.row(i));
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
  Subspace s(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    s.basis_.push_back(unit_vector(ambient_dim, i));
    s.pivots_.push_back(i);
  }
  return s;
}

std::optional<ExactVector> Subspace::coordinates(const ExactVector& v) const {
  if (v.size() != ambient_dim_) throw Error(ErrorKind::DimensionMismatch, "subspace membership");
  ExactVector residual = v;
  ExactVector coords(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    coords[i] = residual[pivots_[i]];
    if (coords[i].is_zero()) continue;
    for (std::size_t j = 0; j < ambient_dim_; ++j)
      if (!basis_[i][j].is_zero()) residual[j] -= coords[i] * basis_[i][j];
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const ExactVector& v) const { return coordinates(v).has_value(); }

bool Subspace::contains(const Subspace& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

RankKernel rank_and_kernel(const ExactMatrix& m) {
  EchelonForm e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<ExactVector> kernel;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ExactVector x(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = -e.reduced(i, f);
    kernel.push_back(std::move(x));
  }
  return {e.rank(), Subspace::span(kernel, cols)};
}

std::size_t rank(const ExactMatrix& m) { return row_reduce(m).rank(); }

Subspace range(const ExactMatrix& m) {
  std::vector<ExactVector> cols;
  cols.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return Subspace::span(cols, m.rows());
}

ExactMatrix LdlFactorization::reconstruct() const {
  const std::size_t n = perm.size();
  ExactMatrix ld = lower;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!ld(i, j).is_zero()) ld(i, j) *= GaussianRational(diag[j]);
  ExactMatrix permuted = ld * lower.adjoint();
  ExactMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(perm[i], perm[j]) = permuted(i, j);
  return out;
}

namespace {

// Maps a witness y (permuted coordinates) back through L^{-dagger} and P.
ExactVector pull_back_witness(const ExactMatrix& lower, const std::vector<std::size_t>& perm,
                              ExactVector y) {
  const std::size_t n = perm.size();
  // Solve L^dagger x = y by back substitution; L is unit lower triangular.
  ExactVector x = std::move(y);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k)
      if (!lower(k, i).is_zero() && !x[k].is_zero()) x[i] -= lower(k, i).conj() * x[k];
  }
  ExactVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[perm[i]] = x[i];
  return v;
}

mpq_class quadratic_form(const ExactMatrix& m, const ExactVector& v) {
  return inner(v, m * v).re();
}

}  // namespace

namespace {

// Most negative <w|M|w> over w = e_i and w = e_i + u e_j, u in {1, -1, i, -i}.
// Such witnesses are easier to read than the pulled-back elimination vector.
std::optional<std::pair<ExactVector, mpq_class>> simple_witness(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  std::optional<std::pair<ExactVector, mpq_class>> best;
  auto offer = [&](ExactVector w, mpq_class value) {
    if (sgn(value) < 0 && (!best || value < best->second)) best.emplace(std::move(w), std::move(value));
  };
  const GaussianRational units[] = {1, -1, GaussianRational(0, 1), GaussianRational(0, -1)};
  for (std::size_t i = 0; i < n; ++i) {
    offer(unit_vector(n, i), m(i, i).re());
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j).is_zero()) continue;
      for (const auto& u : units) {
        ExactVector w = unit_vector(n, i);
        w[j] = u;
        offer(std::move(w), m(i, i).re() + m(j, j).re() + 2 * (u * m(i, j)).re());
      }
    }
  }
  return best;
}

}  // namespace

PsdVerdict psd_check(const ExactMatrix& m) {
  if (!m.hermitian_hint() && !m.is_hermitian())
    throw Error(ErrorKind::NotHermitian, "psd_check requires a Hermitian matrix");
  const std::size_t n = m.rows();
  ExactMatrix a = m;
  ExactMatrix lower = ExactMatrix::identity(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::vector<mpq_class> diag(n, mpq_class(0));

  auto symmetric_swap = [&](std::size_t p, std::size_t q) {
    if (p == q) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(q, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, q));
    std::swap(perm[p], perm[q]);
    // Only the already-computed columns of L follow the row swap.
    for (std::size_t j = 0; j < std::min(p, q); ++j) std::swap(lower(p, j), lower(q, j));
  };

  auto fail = [&](ExactVector y) {
    PsdVerdict v;
    v.psd = false;
    if (auto w = simple_witness(m)) {
      v.witness = std::move(w->first);
      v.witness_value = std::move(w->second);
      return v;
    }
    v.witness = pull_back_witness(lower, perm, std::move(y));
    v.witness_value = quadratic_form(m, v.witness);
    return v;
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      const int s = sgn(a(i, i).re());
      if (s < 0) return fail(unit_vector(n, i));
      if (s > 0 && piv == n) piv = i;
    }
    if (piv == n) {
      // Remaining diagonal is zero: PSD only if the whole trailing block is.
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!a(i, j).is_zero()) {
            ExactVector y(n);
            y[i] = 1;
            y[j] = -a(i, j).conj();
            return fail(std::move(y));
          }
      break;
    }
    symmetric_swap(k, piv);
    const mpq_class d = a(k, k).re();
    diag[k] = d;
    const GaussianRational inv_d = GaussianRational(mpq_class(1) / d);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      lower(i, k) = a(i, k) * inv_d;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (lower(i, k).is_zero()) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (a(k, j).is_zero()) continue;
        a(i, j) -= lower(i, k) * a(k, j);
      }
    }
    for (std::size_t i = k; i < n; ++i) {
      a(i, k) = 0;
      a(k, i) = 0;
    }
  }

  PsdVerdict v;
  v.psd = true;
  v.factorization = LdlFactorization{std::move(perm), std::move(lower), std::move(diag)};
  return v;
}

bool is_psd(const ExactMatrix& m) { return psd_check(m).psd; }

bool verify_ldl(const ExactMatrix& m, const LdlFactorization& f) {
  const std::size_t n = m.rows();
  if (!m.is_square() || f.perm.size() != n || f.diag.size() != n || f.lower.rows() != n ||
      f.lower.cols() != n)
    return false;
  std::vector<bool> seen(n, false);
  for (std::size_t p : f.perm) {
    if (p >= n || seen[p]) return false;
    seen[p] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(f.diag[i]) < 0) return false;
    if (f.lower(i, i) != GaussianRational(1)) return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!f.lower(i, j).is_zero()) return false;
  }
  return f.reconstruct() == m;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  EchelonForm e = row_reduce(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1)
    throw Error(ErrorKind::RangeViolation, "matrix is singular");
  ExactMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

ExactMatrix orth_projector(const Subspace& s) {
  const std::size_t n = s.ambient_dim();
  if (s.dim() == 0) return ExactMatrix(n, n);
  ExactMatrix b = ExactMatrix::from_columns(s.basis(), n);
  ExactMatrix b_dag = b.adjoint();
  ExactMatrix p = b * inverse(b_dag * b) * b_dag;
  p.mark_hermitian();
  return p;
}

ExactMatrix solve_on_range(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "solve_on_range");
  // x = A^dagger y with (A A^dagger) y = b gives the unique solution in R(A^dagger).
  const ExactMatrix a_dag = a.adjoint();
  const ExactMatrix gram = a * a_dag;
  const std::size_t n = a.rows();
  const std::size_t k = b.cols();
  ExactMatrix aug(n, n + k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = gram(i, j);
    for (std::size_t j = 0; j < k; ++j) aug(i, n + j) = b(i, j);
  }
  EchelonForm e = row_reduce(std::move(aug));
  if (e.rank() > 0 && e.pivots.back() >= n)
    throw Error(ErrorKind::RangeViolation, "right-hand side is not in the range");
  ExactMatrix y(n, k);
  for (std::size_t i = 0; i < e.rank(); ++i)
    for (std::size_t j = 0; j < k; ++j) y(e.pivots[i], j) = e.reduced(i, n + j);
  return a_dag * y;
}

ExactVector solve_on_range(const ExactMatrix& a, const ExactVector& b) {
  return solve_on_range(a, ExactMatrix::from_columns({b}, b.size())).column(0);
}

Subspace subspace_intersection(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "subspace_intersection");
  const std::size_t n = u.ambient_dim();
  if (u.dim() == 0 || v.dim() == 0) return Subspace(n);
  std::vector<ExactVector> cols = u.basis();
  for (const auto& b : v.basis()) cols.push_back(scaled(b, GaussianRational(-1)));
  RankKernel rk = rank_and_kernel(ExactMatrix::from_columns(cols, n));
  std::vector<ExactVector> common;
  for (const auto& coeffs : rk.kernel.basis()) {
    ExactVector x(n);
    for (std::size_t i = 0; i < u.dim(); ++i)
      if (!coeffs[i].is_zero()) x = add(x, scaled(u.basis()[i], coeffs[i]));
    common.push_back(std::move(x));
  }
  return Subspace::span(common, n);
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "subspace_sum");
  std::vector<ExactVector> all = u.basis();
  all.insert(all.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(all, u.ambient_dim());
}

}  // namespace locext
