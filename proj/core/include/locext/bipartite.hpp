#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locext/exact_matrix.hpp"

namespace locext {

enum class Side { A, B };

inline Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
inline const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

/// Local dimensions of a bipartite system. Basis ordering is fixed:
/// |i>_A (x) |j>_B has index i * dim_b + j.
struct Dims {
  std::size_t a = 0;
  std::size_t b = 0;

  std::size_t total() const { return a * b; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * b + j; }
  std::size_t on(Side s) const { return s == Side::A ? a : b; }
  Dims swapped() const { return {b, a}; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// |i j> as an exact vector.
ExactVector basis_ket(Dims d, std::size_t i, std::size_t j);

/// A weighted vector w|v><v|; used for conic decompositions of states.
struct WeightedVector {
  mpq_class weight;
  ExactVector vector;
  std::string name;
};

using Decomposition = std::vector<WeightedVector>;

ExactMatrix sum_of_projectors(const Decomposition& parts, std::size_t dim);

/// Schmidt rank of |v> in C^a (x) C^b: rank of its a x b matricization.
std::size_t schmidt_rank(const ExactVector& v, Dims d);
ExactMatrix matricize(const ExactVector& v, Dims d);

/// Hermitian operator on C^m (x) C^n with no positivity requirement
/// (partial transposes, witnesses, assembled candidates).
struct BipartiteOperator {
  Dims dims;
  ExactMatrix matrix;
};

/// Unnormalized density operator. The constructor verifies Hermiticity and
/// positive semidefiniteness exactly.
class BipartiteState {
 public:
  BipartiteState(Dims dims, ExactMatrix matrix, std::string label = {},
                 std::optional<Decomposition> decomposition = std::nullopt);

  Dims dims() const { return dims_; }
  std::size_t dim_a() const { return dims_.a; }
  std::size_t dim_b() const { return dims_.b; }
  const ExactMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// Optional conic decomposition that sums to the matrix exactly (checked).
  const std::optional<Decomposition>& decomposition() const { return decomposition_; }

  BipartiteOperator as_operator() const { return {dims_, matrix_}; }

 private:
  Dims dims_;
  ExactMatrix matrix_;
  std::string label_;
  std::optional<Decomposition> decomposition_;
};

/// rho^{T_B}: <ij|rho^{T_B}|kl> = <il|rho|kj>;  rho^{T_A}: <ij|rho^{T_A}|kl> = <kj|rho|il>.
ExactMatrix partial_transpose(const ExactMatrix& m, Dims d, Side side);
ExactMatrix partial_transpose(const BipartiteState& s, Side side);

/// (p, q) = (rank rho, rank rho^{T_A}).
std::pair<std::size_t, std::size_t> birank(const BipartiteState& s);

bool is_ppt(const BipartiteState& s);

/// <ji|rho'|lk> = <ij|rho|kl>.
ExactMatrix swap_subsystems(const ExactMatrix& m, Dims d);
BipartiteState swap_subsystems(const BipartiteState& s);
ExactVector swap_subsystems(const ExactVector& v, Dims d);

/// (A (x) B) rho (A (x) B)^dagger where A, B select local basis vectors.
BipartiteState project_local_block(const BipartiteState& s, const std::vector<std::size_t>& rows_a,
                                   const std::vector<std::size_t>& rows_b);
ExactMatrix project_local_block(const ExactMatrix& m, Dims d, const std::vector<std::size_t>& rows_a,
                                const std::vector<std::size_t>& rows_b);

/// (A (x) 1) rho (A (x) 1)^dagger with A = 1 - |phi><phi| / <phi|phi> on the given side.
BipartiteState project_out_vector(const BipartiteState& s, Side side, const ExactVector& phi);

/// Divides by the trace; display only, states stay unnormalized elsewhere.
ExactMatrix trace_normalized(const ExactMatrix& m);

}  // namespace locext
