#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "locext/bipartite.hpp"

namespace locext::num {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Off-diagonal entries are standard complex normal (E|z|^2 = 1), diagonal
/// entries standard real normal. Deterministic per seed.
CMatrix random_hermitian(std::size_t n, std::uint64_t seed);

struct EigenSystem {
  RVector values;    // ascending
  CMatrix vectors;   // columns
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi for n <= 32, Eigen's tridiagonal QR above. Throws
/// ConvergenceFailure when the off-diagonal mass does not fall below
/// tol * ||A||_F.
EigenSystem eig_hermitian(const CMatrix& a, double tol = 1e-15, std::size_t max_sweeps = 64);

CMatrix partial_transpose(const CMatrix& m, Dims d, Side side = Side::B);

struct FloatState {
  Dims dims;
  CMatrix matrix;
  std::pair<std::size_t, std::size_t> birank_target{0, 0};
};

FloatState to_float(const BipartiteState& s);
/// Keeps the `rank` leading eigenpairs, rationalizes eigenvectors and
/// eigenvalues, and rebuilds V D V^dagger exactly, so the result is PSD
/// of rank at most `rank` by construction.
ExactMatrix rationalize_truncated(const FloatState& s, std::size_t rank, long max_den = 1L << 20);

struct GaussNewtonOptions {
  double tol = 1e-9;
  std::size_t max_iter = 200;
  double epsilon = 0.1;       // start: 1/mn + epsilon * H / mn
  std::size_t max_halvings = 30;
  std::size_t polish = 3;      // extra steps after reaching tol while the residual drops
};

struct GaussNewtonResult {
  FloatState state;
  bool converged = false;
  double residual = 0;        // max |r_i| of the stacked residual
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  double min_eigenvalue = 0;     // of X
  double min_eigenvalue_pt = 0;  // of X^{T_B}
};

/// Stacked residual: the mn-p smallest eigenvalues of X followed by the
/// mn-q smallest eigenvalues of X^{T_B}.
RVector birank_residual(const CMatrix& x, Dims d, std::size_t p, std::size_t q);

/// Runs the iteration and reports the outcome without throwing.
GaussNewtonResult gauss_newton_run(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed,
                                   const GaussNewtonOptions& options = {});
/// As above; throws ConvergenceFailure when the residual stays above tol.
FloatState gauss_newton_birank(std::size_t m, std::size_t n, std::size_t p, std::size_t q, std::uint64_t seed,
                               const GaussNewtonOptions& options = {});

struct ExtensionDimensionReport {
  std::size_t dimension = 0;
  std::size_t p = 0, q = 0;
  /// Sines of the principal angles between the two constraint spaces, ascending.
  std::vector<double> singular_values;
  double largest_below = 0;   // largest value counted
  double smallest_above = 0;  // smallest value not counted
  double range_gap_low = 0;   // largest eigenvalue treated as zero (rho and rho^{T_B})
  double range_gap_high = 0;  // smallest eigenvalue treated as nonzero
};

/// Dimension of the joint solution space of the PPT extension constraints
/// along A, by counting principal angles below svd_tol. Throws RankAmbiguity
/// when a counted or discarded value lies within a decade of svd_tol.
ExtensionDimensionReport numeric_extension_report(const FloatState& s, double svd_tol = 1e-7);
std::size_t numeric_extension_dimension(const FloatState& s, double svd_tol = 1e-7);

}  // namespace locext::num
