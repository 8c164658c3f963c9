#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "locext/bipartite.hpp"
#include "locext/polynomial.hpp"

namespace locext::alg {

/// Psi(x) = matricization of sum_l x_l e_l for a fixed range basis {e_l}.
/// Entries are linear forms with rational coefficients.
struct SymbolicRangeMatrix {
  Dims dims;
  PolyRing ring;
  std::vector<ExactVector> basis;
  std::vector<Polynomial> entries;  // row-major, dims.a x dims.b

  const Polynomial& at(std::size_t i, std::size_t j) const { return entries.at(dims.index(i, j)); }
  /// Matricization of sum_l x_l e_l.
  ExactMatrix substitute(const std::vector<mpq_class>& x) const;
  /// sum_ij conj(w_ij) Psi_ij = <w|psi(x)>.
  Polynomial overlap(const ExactVector& w) const;
};

/// Uses the canonical echelon basis of R(s); variable psi{i}{j} belongs to
/// the basis vector whose pivot sits at |ij>.
SymbolicRangeMatrix range_coordinate_matrix(const BipartiteState& s, bool require_orthogonal_basis = false);

/// Uses the given basis, which must be linearly independent with rational
/// entries. Throws NonOrthogonalBasis when requested and violated.
SymbolicRangeMatrix range_coordinate_matrix(Dims d, const std::vector<ExactVector>& basis,
                                            std::vector<std::string> names, bool require_orthogonal_basis = false);

/// Uses the vectors of the attached decomposition as basis, named after it.
/// Requires them to span R(s) and be linearly independent.
SymbolicRangeMatrix decomposition_coordinate_matrix(const BipartiteState& s, bool require_orthogonal_basis = false);

struct MinorIdeal {
  std::vector<Polynomial> generators;  // monic, deduplicated, in enumeration order
  std::size_t total = 0;                // C(m,k) C(n,k)
  std::size_t zero = 0;
  std::size_t excluded = 0;
  std::size_t duplicates = 0;
};

/// All k x k minors of M. Minors using any excluded variable are dropped,
/// as are zero minors and scalar multiples of earlier ones.
MinorIdeal minor_ideal(const SymbolicRangeMatrix& m, std::size_t k, const std::vector<std::string>& exclude_vars = {});

/// Determinant of a small square matrix of polynomials by Laplace expansion.
Polynomial determinant(const std::vector<Polynomial>& entries, std::size_t n);

}  // namespace locext::alg
