#include "locext/numlab.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "locext/errors.hpp"

namespace locext::num {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorKind::PreconditionViolation, "random_hermitian needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = std::sqrt(0.5);
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = normal(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = s * normal(rng);
      const double im = s * normal(rng);
      h(i, j) = {re, im};
      h(j, i) = {re, -im};
    }
  }
  return h;
}

namespace {

EigenSystem sorted(RVector values, CMatrix vectors, std::size_t sweeps) {
  const auto n = values.size();
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values(a) < values(b); });
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(vectors.rows(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = values(idx[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vectors.col(idx[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweeps;
  return out;
}

EigenSystem jacobi(CMatrix a, double tol, std::size_t max_sweeps) {
  const Eigen::Index n = a.rows();
  CMatrix v = CMatrix::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);
  auto off = [&] {
    double s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2 * s);
  };
  std::size_t sweep = 0;
  while (off() > tol * scale) {
    if (sweep++ == max_sweeps) throw Error(ErrorKind::ConvergenceFailure, "Jacobi sweeps exhausted");
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= 1e-300) continue;
        const std::complex<double> e = a(p, q) / g;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        // U = diag(1, conj(e)) [[c, s], [-s, c]] on (p, q)
        const std::complex<double> u00 = c, u01 = s, u10 = -s * std::conj(e), u11 = c * std::conj(e);
        const CVector cp = a.col(p), cq = a.col(q);
        a.col(p) = cp * u00 + cq * u10;
        a.col(q) = cp * u01 + cq * u11;
        const Eigen::RowVectorXcd rp = a.row(p), rq = a.row(q);
        a.row(p) = std::conj(u00) * rp + std::conj(u10) * rq;
        a.row(q) = std::conj(u01) * rp + std::conj(u11) * rq;
        a(p, q) = a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        const CVector vp = v.col(p), vq = v.col(q);
        v.col(p) = vp * u00 + vq * u10;
        v.col(q) = vp * u01 + vq * u11;
      }
  }
  return sorted(a.diagonal().real(), v, sweep);
}

}  // namespace

EigenSystem eig_hermitian(const CMatrix& a, double tol, std::size_t max_sweeps) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "eig_hermitian needs a square matrix");
  const CMatrix h = (a + a.adjoint()) / 2.0;
  if (h.rows() <= 32) return jacobi(h, tol, max_sweeps);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::ConvergenceFailure, "eigensolver failed");
  return sorted(es.eigenvalues(), es.eigenvectors(), 0);
}

CMatrix partial_transpose(const CMatrix& m, Dims d, Side side) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j)
      for (std::size_t k = 0; k < d.a; ++k)
        for (std::size_t l = 0; l < d.b; ++l) {
          const auto r = static_cast<Eigen::Index>(d.index(i, j)), c = static_cast<Eigen::Index>(d.index(k, l));
          out(r, c) = side == Side::B ? m(static_cast<Eigen::Index>(d.index(i, l)), static_cast<Eigen::Index>(d.index(k, j)))
                                      : m(static_cast<Eigen::Index>(d.index(k, j)), static_cast<Eigen::Index>(d.index(i, l)));
        }
  return out;
}

FloatState to_float(const BipartiteState& s) {
  const auto n = static_cast<Eigen::Index>(s.dims().total());
  FloatState out;
  out.dims = s.dims();
  out.matrix.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& z = s.matrix()(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      out.matrix(i, j) = {z.real_double(), z.imag_double()};
    }
  const auto [p, q] = birank(s);
  out.birank_target = {p, q};
  return out;
}

ExactMatrix rationalize_truncated(const FloatState& s, std::size_t rank, long max_den) {
  const EigenSystem es = eig_hermitian(s.matrix);
  const auto n = static_cast<std::size_t>(s.matrix.rows());
  ExactMatrix out(n, n);
  for (std::size_t k = n - std::min(rank, n); k < n; ++k) {
    const double lambda = es.values(static_cast<Eigen::Index>(k));
    if (lambda <= 0) continue;
    ExactVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto z = es.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      v[i] = GaussianRational(rationalize(z.real(), max_den), rationalize(z.imag(), max_den));
    }
    out += ExactMatrix::outer(v, v) * GaussianRational(rationalize(lambda, max_den));
  }
  out.mark_hermitian();
  return out;
}

RVector birank_residual(const CMatrix& x, Dims d, std::size_t p, std::size_t q) {
  const std::size_t mn = d.total();
  const EigenSystem e1 = eig_hermitian(x);
  const EigenSystem e2 = eig_hermitian(partial_transpose(x, d));
  RVector r(static_cast<Eigen::Index>((mn - p) + (mn - q)));
  for (std::size_t k = 0; k < mn - p; ++k) r(static_cast<Eigen::Index>(k)) = e1.values(static_cast<Eigen::Index>(k));
  for (std::size_t k = 0; k < mn - q; ++k)
    r(static_cast<Eigen::Index>(mn - p + k)) = e2.values(static_cast<Eigen::Index>(k));
  return r;
}

namespace {

struct Evaluation {
  RVector residual;          // stacked eigenvalues
  RVector rhs;               // residual followed by zeros for the coupling rows
  Eigen::MatrixXd jacobian;
  double min1 = 0, min2 = 0;
};

// Derivative of dX -> tr(dX G) for a general complex G. Parameters: the N
// real diagonal entries, then Re and Im of each upper off-diagonal entry.
// `imag` selects the imaginary part of the derivative.
void gradient_row(const CMatrix& g, bool imag, Eigen::MatrixXd& jac, Eigen::Index row) {
  const Eigen::Index n = g.rows();
  const std::complex<double> i1(0, 1);
  auto part = [imag](std::complex<double> z) { return imag ? z.imag() : z.real(); };
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < n; ++k) jac(row, col++) = part(g(k, k));
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      jac(row, col++) = part(g(l, k) + g(k, l));
      jac(row, col++) = part(i1 * (g(l, k) - g(k, l)));
    }
}

// Rows for the compression V^dagger dX V onto the near-null eigenvectors:
// diagonal entries are the eigenvalue gradients, off-diagonal entries keep
// the degenerate cluster from rotating (their residual is zero).
Eigen::Index compression_rows(const CMatrix& vecs, Eigen::Index r, bool pt, Dims d, Eigen::MatrixXd& jac,
                              Eigen::Index row, Eigen::Index& coupling_row) {
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = i; j < r; ++j) {
      CMatrix g = vecs.col(j) * vecs.col(i).adjoint();
      // tr(dX^{T_B} G) = tr(dX G^{T_B})
      if (pt) g = partial_transpose(g, d);
      if (i == j) {
        gradient_row(g, false, jac, row++);
      } else {
        gradient_row(g, false, jac, coupling_row++);
        gradient_row(g, true, jac, coupling_row++);
      }
    }
  return row;
}

Evaluation evaluate(const CMatrix& x, Dims d, std::size_t p, std::size_t q, bool with_jacobian) {
  const auto mn = static_cast<Eigen::Index>(d.total());
  const auto r1 = mn - static_cast<Eigen::Index>(p), r2 = mn - static_cast<Eigen::Index>(q);
  const EigenSystem e1 = eig_hermitian(x);
  const EigenSystem e2 = eig_hermitian(partial_transpose(x, d));
  Evaluation ev;
  ev.min1 = e1.values(0);
  ev.min2 = e2.values(0);
  ev.residual.resize(r1 + r2);
  for (Eigen::Index k = 0; k < r1; ++k) ev.residual(k) = e1.values(k);
  for (Eigen::Index k = 0; k < r2; ++k) ev.residual(r1 + k) = e2.values(k);
  if (!with_jacobian) return ev;
  const Eigen::Index rows = r1 * r1 + r2 * r2;
  ev.rhs = RVector::Zero(rows);
  ev.rhs.head(r1 + r2) = ev.residual;
  ev.jacobian.resize(rows, mn * mn);
  Eigen::Index coupling = r1 + r2;
  const Eigen::Index next = compression_rows(e1.vectors, r1, false, d, ev.jacobian, 0, coupling);
  compression_rows(e2.vectors, r2, true, d, ev.jacobian, next, coupling);
  return ev;
}

CMatrix apply_step(const CMatrix& x, const Eigen::VectorXd& delta, double scale) {
  CMatrix out = x;
  const Eigen::Index n = x.rows();
  Eigen::Index col = 0;
  for (Eigen::Index k = 0; k < n; ++k) out(k, k) += scale * delta(col++);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = k + 1; l < n; ++l) {
      const std::complex<double> z(scale * delta(col), scale * delta(col + 1));
      col += 2;
      out(k, l) += z;
      out(l, k) += std::conj(z);
    }
  out = (out + out.adjoint()) / 2.0;
  const double tr = out.trace().real();
  if (tr > 0) out /= tr;
  return out;
}

double max_abs(const RVector& r) { return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff(); }

}  // namespace

GaussNewtonResult gauss_newton_run(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed,
                                   const GaussNewtonOptions& opt) {
  const Dims d{m, n};
  const std::size_t mn = d.total();
  if (m == 0 || n == 0 || p < 1 || q < 1 || p > mn || q > mn)
    throw Error(ErrorKind::PreconditionViolation, "birank target must satisfy 1 <= p, q <= mn");
  const auto N = static_cast<Eigen::Index>(mn);
  CMatrix x = (CMatrix::Identity(N, N) + opt.epsilon * random_hermitian(mn, seed)) / double(mn);
  x /= x.trace().real();

  GaussNewtonResult out;
  out.seed = seed;
  Evaluation ev = evaluate(x, d, p, q, true);
  double res = max_abs(ev.residual);
  std::size_t it = 0;
  while (res >= opt.tol && it < opt.max_iter) {
    ++it;
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ev.jacobian);
    const Eigen::VectorXd delta = cod.solve(-ev.rhs);
    double scale = 1;
    CMatrix best = apply_step(x, delta, scale);
    Evaluation best_ev = evaluate(best, d, p, q, false);
    for (std::size_t h = 0; h < opt.max_halvings && best_ev.residual.norm() > ev.residual.norm(); ++h) {
      scale /= 2;
      best = apply_step(x, delta, scale);
      best_ev = evaluate(best, d, p, q, false);
    }
    x = std::move(best);
    ev = evaluate(x, d, p, q, true);
    res = max_abs(ev.residual);
  }
  for (std::size_t k = 0; k < opt.polish && res < opt.tol && res > 0; ++k) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(ev.jacobian);
    CMatrix next = apply_step(x, cod.solve(-ev.rhs), 1);
    Evaluation nev = evaluate(next, d, p, q, true);
    if (max_abs(nev.residual) >= res) break;
    x = std::move(next);
    ev = std::move(nev);
    res = max_abs(ev.residual);
  }
  out.iterations = it;
  out.residual = res;
  out.min_eigenvalue = ev.min1;
  out.min_eigenvalue_pt = ev.min2;
  out.converged = res < opt.tol && ev.min1 >= -opt.tol && ev.min2 >= -opt.tol;
  out.state = {d, std::move(x), {p, q}};
  return out;
}

FloatState gauss_newton_birank(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed,
                               const GaussNewtonOptions& options) {
  GaussNewtonResult r = gauss_newton_run(m, n, p, q, seed, options);
  if (!r.converged)
    throw Error(ErrorKind::ConvergenceFailure, "residual " + std::to_string(r.residual) + " after " +
                                                   std::to_string(r.iterations) + " iterations (seed " +
                                                   std::to_string(seed) + ")");
  return std::move(r.state);
}

namespace {

// Orthonormal range basis: eigenvectors whose eigenvalue exceeds
// svd_tol * max(1, lambda_max). Records the gap around the cut.
CMatrix range_basis(const CMatrix& m, double svd_tol, double& gap_low, double& gap_high) {
  const EigenSystem es = eig_hermitian(m);
  const double top = std::max(1.0, std::abs(es.values(es.values.size() - 1)));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    const double rel = std::abs(es.values(k)) / top;
    if (rel > svd_tol / 10 && rel < svd_tol * 10)
      throw Error(ErrorKind::RankAmbiguity, "eigenvalue " + std::to_string(es.values(k)) + " within a decade of the cut");
    if (rel > svd_tol) {
      keep.push_back(k);
      gap_high = std::min(gap_high, rel);
    } else {
      gap_low = std::max(gap_low, rel);
    }
  }
  CMatrix b(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) b.col(static_cast<Eigen::Index>(c)) = es.vectors.col(keep[c]);
  return b;
}

}  // namespace

ExtensionDimensionReport numeric_extension_report(const FloatState& s, double svd_tol) {
  const Dims d = s.dims;
  const auto m = static_cast<Eigen::Index>(d.a), n = static_cast<Eigen::Index>(d.b);
  ExtensionDimensionReport out;
  out.range_gap_high = 1e300;
  const CMatrix r1 = range_basis(s.matrix, svd_tol, out.range_gap_low, out.range_gap_high);
  const CMatrix r2 = range_basis(partial_transpose(s.matrix, d), svd_tol, out.range_gap_low, out.range_gap_high);
  out.p = static_cast<std::size_t>(r1.cols());
  out.q = static_cast<std::size_t>(r2.cols());
  // tripartite index (a, b, c) -> (a n + b) n + c, c the edge copy of B
  const Eigen::Index t = m * n * n;
  auto idx = [&](Eigen::Index a, Eigen::Index b, Eigen::Index c) { return (a * n + b) * n + c; };
  CMatrix q1 = CMatrix::Zero(t, r1.cols() * n);  // R(rho)_{AB} (x) C^n
  CMatrix q2 = CMatrix::Zero(t, r2.cols() * n);  // R(rho^{T_B})_{A B-bar} (x) C^n_B
  for (Eigen::Index k = 0; k < r1.cols(); ++k)
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index b = 0; b < n; ++b) q1(idx(a, b, c), k * n + c) = r1(a * n + b, k);
  for (Eigen::Index k = 0; k < r2.cols(); ++k)
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index a = 0; a < m; ++a)
        for (Eigen::Index c = 0; c < n; ++c) q2(idx(a, b, c), k * n + b) = r2(a * n + c, k);
  // sines of the principal angles between the two spaces
  const CMatrix resid = q2 - q1 * (q1.adjoint() * q2);
  Eigen::JacobiSVD<CMatrix> svd(resid);
  const RVector sv = svd.singularValues();
  for (Eigen::Index k = sv.size(); k-- > 0;) out.singular_values.push_back(sv(k));
  out.smallest_above = 1e300;
  for (double sv : out.singular_values) {
    if (sv > svd_tol / 10 && sv < svd_tol * 10)
      throw Error(ErrorKind::RankAmbiguity, "principal angle " + std::to_string(sv) + " within a decade of svd_tol");
    if (sv < svd_tol) {
      ++out.dimension;
      out.largest_below = std::max(out.largest_below, sv);
    } else {
      out.smallest_above = std::min(out.smallest_above, sv);
    }
  }
  return out;
}

std::size_t numeric_extension_dimension(const FloatState& s, double svd_tol) {
  return numeric_extension_report(s, svd_tol).dimension;
}

}  // namespace locext::num
