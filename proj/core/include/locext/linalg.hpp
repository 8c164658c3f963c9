#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "locext/exact_matrix.hpp"

namespace locext {

/// A linear subspace of C^ambient_dim held in canonical form: the basis is
/// the nonzero rows of the reduced row echelon form of any spanning set,
/// with every pivot normalized to 1. Equal subspaces therefore have
/// identical bases.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  /// Span of arbitrary (possibly dependent) vectors.
  static Subspace span(const std::vector<ExactVector>& vectors, std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<ExactVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const ExactVector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the canonical basis; nullopt when v is outside.
  std::optional<ExactVector> coordinates(const ExactVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_dim_;
  std::vector<ExactVector> basis_;
  std::vector<std::size_t> pivots_;
};

struct EchelonForm {
  ExactMatrix reduced;               // RREF, pivots equal to 1
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
EchelonForm row_reduce(ExactMatrix m);

struct RankKernel {
  std::size_t rank;
  Subspace kernel;
};

RankKernel rank_and_kernel(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
/// Column space R(M).
Subspace range(const ExactMatrix& m);

/// Symmetric-pivoted factorization P M P^T = L D L^dagger.
struct LdlFactorization {
  std::vector<std::size_t> perm;  // row i of P M P^T is row perm[i] of M
  ExactMatrix lower;              // unit lower triangular
  std::vector<mpq_class> diag;    // nonnegative pivots

  /// Reassembles P^T L D L^dagger P.
  ExactMatrix reconstruct() const;
};

struct PsdVerdict {
  bool psd = false;
  std::optional<LdlFactorization> factorization;  // set when psd
  ExactVector witness;                              // set when !psd
  mpq_class witness_value;                          // <w|M|w> < 0
};

/// Exact PSD decision. Throws Error(NotHermitian) for non-Hermitian input.
PsdVerdict psd_check(const ExactMatrix& m);
bool is_psd(const ExactMatrix& m);

/// Replays a claimed factorization: checks P^T L D L^dagger P == M, unit
/// lower-triangularity of L and nonnegativity of D.
bool verify_ldl(const ExactMatrix& m, const LdlFactorization& f);

/// Orthogonal projector onto S, built from the Gram matrix of its basis.
ExactMatrix orth_projector(const Subspace& s);

/// Minimal-norm solution of A x = b, i.e. the action of the pseudoinverse
/// on b. Throws Error(RangeViolation) if b is not in R(A).
ExactVector solve_on_range(const ExactMatrix& a, const ExactVector& b);

/// Column-wise solve_on_range: returns A^+ B.
ExactMatrix solve_on_range(const ExactMatrix& a, const ExactMatrix& b);

/// Inverse of a nonsingular square matrix.
ExactMatrix inverse(const ExactMatrix& m);

Subspace subspace_intersection(const Subspace& u, const Subspace& v);
Subspace subspace_sum(const Subspace& u, const Subspace& v);

}  // namespace locext
