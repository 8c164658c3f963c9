#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "locext/bipartite.hpp"
#include "locext/linalg.hpp"

namespace locext::ext {

/// Block form of a single-direction local extension.
///
/// `core` keeps the original orientation. Core indices are the sites whose
/// `side` coordinate differs from `perp_index`, in increasing order. Edge
/// indices run over the other subsystem. `coupling` is core x edge and
/// `edge` is edge x edge, so the extended operator is [[core, coupling],
/// [coupling^dagger, edge]] after the site permutation.
struct ExtensionBlocks {
  BipartiteState core;
  ExactMatrix coupling;
  ExactMatrix edge;
  Side side = Side::A;
  std::size_t perp_index = 0;

  Dims full_dims() const;
  std::size_t edge_dim() const { return core.dims().on(other(side)); }
};

/// Site index maps between the core, the edge and the extended system.
std::vector<std::size_t> core_sites(Dims full, Side side, std::size_t perp_index);
std::vector<std::size_t> edge_sites(Dims full, Side side, std::size_t perp_index);

ExtensionBlocks split_blocks(const BipartiteState& s, Side side, std::size_t perp_index);
ExactMatrix assemble_matrix(const ExtensionBlocks& b);
BipartiteState assemble_extension(const ExtensionBlocks& b, std::string label = {});

enum class SchurKind { EdgeMinusCore, CoreMinusEdge };

/// rho_e - chi^dagger rho_c^+ chi, or rho_c - chi rho_e^+ chi^dagger.
ExactMatrix schur_complement(const ExtensionBlocks& b, SchurKind which = SchurKind::EdgeMinusCore);

/// (p + q - m n) n - m for an extension of an m x n core along A.
long extension_count_bound(long m, long n, long p, long q);

enum class SolveRoute { Intersection, StackedNullSpace };

/// Solution space of the PPT linear constraints on chi for an extension of
/// `core` along `side`. Basis elements are coupling matrices in the frame
/// of split_blocks (core sites x edge index).
struct ExtensionSpace {
  std::size_t dimension = 0;           // complex dimension
  std::vector<ExactMatrix> basis;
  std::size_t trivial_dimension = 0;   // complex dimension of the SLOCC family
  std::vector<ExactMatrix> trivial_basis;
  long bound = 0;
  std::size_t p = 0, q = 0;
  Dims core_dims;
  Side side = Side::A;
  /// Tripartite solution and SLOCC spaces in the A-extension frame.
  Subspace solution;
  Subspace trivial;

  std::size_t real_dimension() const { return 2 * dimension; }
  /// True when chi solves the constraints.
  bool contains(const ExactMatrix& chi) const;
  /// True when chi is a member of the SLOCC family span.
  bool is_trivial(const ExactMatrix& chi) const;
};

/// Both routes give identical canonical subspaces; the default is checked
/// against the other in the tests.
ExtensionSpace ppt_extension_space(const BipartiteState& core, Side side = Side::A,
                                   SolveRoute route = SolveRoute::Intersection);

/// Tripartite vector chi~[a,b,c] = chi[(a,b),c] in the frame where the
/// extension runs along A, and its inverse.
ExactVector tripartite_vector(const ExactMatrix& chi_a_frame, Dims core_a_frame);
ExactMatrix coupling_from_tripartite(const ExactVector& v, Dims core_a_frame);

/// Coupling produced by the SLOCC map 1 + |perp><phi| on the given side.
ExactMatrix slocc_coupling(const BipartiteState& core, Side side, const ExactVector& phi);
/// (S (x) 1) rho_c (S (x) 1)^dagger with S = 1 + |perp><phi|; perp is
/// appended as the last local index.
BipartiteState slocc_extension(const BipartiteState& core, Side side, const ExactVector& phi);

/// chi = |alpha beta><gamma| with the minimal-rank edge block. alpha lives
/// on `side`, beta and gamma on the other subsystem. Throws
/// PreconditionViolation naming the failed condition and PPTFailure if the
/// assembled state is not PPT.
ExtensionBlocks product_pair_extension(const BipartiteState& core, Side side, const ExactVector& alpha,
                                       const ExactVector& beta, const ExactVector& gamma);

/// Edge block chi^dagger rho_c^+ chi; appended along `side`.
ExtensionBlocks flat_extension_blocks(const BipartiteState& core, Side side, const ExactMatrix& chi);
BipartiteState flat_extension(const BipartiteState& core, Side side, const ExactMatrix& chi);

/// Direct sum with an edge block and zero coupling.
ExtensionBlocks direct_sum_blocks(const BipartiteState& core, Side side, const ExactMatrix& edge);

struct LiftResult {
  Decomposition lifted;                 // vectors on the extended system
  ExactMatrix remainder;                // rho_{e\c} placed on the perp block
  ExactMatrix edge_schur;               // rho_{e\c} itself
  std::vector<std::size_t> core_schmidt_ranks;
  std::vector<std::size_t> lifted_schmidt_ranks;

  std::size_t max_increment() const;
};

/// Lifts a decomposition of the core of `ext` to one of `ext` plus the
/// edge remainder. Throws DecompositionMismatch if the vectors do not sum
/// to the core.
LiftResult lift_decomposition(const BipartiteState& ext, Side side, std::size_t perp_index,
                              const Decomposition& core_vectors);

/// Lifted vectors plus rank-one product pieces |perp>|v> of the remainder;
/// sums to the extension exactly.
Decomposition complete_decomposition(const LiftResult& r, Dims full, Side side, std::size_t perp_index);

/// w_i |v_i><v_i| pieces of a PSD matrix read off its exact LDL factors.
Decomposition rank_one_pieces(const ExactMatrix& m);

enum class Extremality { Extremal, NotExtremal, NotCertified };
const char* to_string(Extremality e);

struct PsdExtremalityReport {
  Extremality verdict = Extremality::NotCertified;
  bool flat = false;
  bool pure_product = false;
  ExactMatrix edge_schur;
  /// Flat part plus rank-one pieces |perp>|v><perp|<v| spanning rho_{e\c};
  /// empty when the extension is flat.
  std::optional<ExtensionBlocks> flat_part;
  Decomposition remainder;
};

PsdExtremalityReport extremality_check_psd(const ExtensionBlocks& b);

struct PptExtremalityReport {
  Extremality verdict = Extremality::NotCertified;
  std::size_t intersection_dim = 0;
  bool trivial_range_intersection = false;
  ExactMatrix edge_schur;
  ExactMatrix edge_schur_pt;
};

/// Sufficient condition only. Extremal requires an empty tripartite
/// intersection and trivially intersecting Schur-complement ranges.
PptExtremalityReport extremality_check_ppt(const ExtensionBlocks& b);

struct PeelResult {
  ExactMatrix peeled;    // W_c - chi W_e^+ chi^dagger on the core sites
  ExactMatrix psd_part;  // [[chi W_e^+ chi^dagger, chi],[chi^dagger, W_e]] on the full space
  ExactMatrix embedded;  // peeled placed on the core sites of the full space
  bool psd_part_is_psd = false;
};

/// Hermitian W on `dims` split at perp_index of `side`. Throws
/// RangeViolation when R(chi^dagger) is not inside R(W_e).
PeelResult witness_schur_peel(const ExactMatrix& w, Dims dims, Side side, std::size_t perp_index);

/// One replayable extension step; the new direction is always appended.
struct PipelineStep {
  enum class Kind { Slocc, ProductPair, DirectSum, Flat };
  Kind kind = Kind::Slocc;
  Side side = Side::A;
  ExactVector phi;     // slocc
  ExactVector alpha;   // product_pair, on `side`
  ExactVector beta;    // product_pair, on the other side
  ExactVector gamma;   // product_pair, on the other side
  ExactMatrix edge;    // direct_sum
  ExactMatrix chi;     // flat
  std::string note;
};

const char* to_string(PipelineStep::Kind k);

/// Applies a step and returns the extended state.
BipartiteState apply_step(const BipartiteState& s, const PipelineStep& step);
/// Blocks of the step, in the frame of the extended state.
ExtensionBlocks step_blocks(const BipartiteState& s, const PipelineStep& step);

}  // namespace locext::ext
