#pragma once

#include <optional>
#include <vector>

#include "locext/bipartite.hpp"
#include "locext/extension.hpp"
#include "locext/grid_graph.hpp"

namespace locext {

/// 3x3 grid state with edges e0..e4 and weights (1,1,1,3,3).
GridGraph rho_3x3_graph();
BipartiteState rho_3x3();
/// rho_3x3^{T_B} = sum r~_i |f_i><f_i| with r~ = (1,2,1,1,1,1).
Decomposition rho_3x3_pt_decomposition();

/// The three recorded extension steps leading from rho_3x3 to the 4x5
/// state, and every intermediate state. Each stage carries an exact
/// decomposition obtained by lifting the previous one.
struct Rho4x5Pipeline {
  std::vector<ext::PipelineStep> steps;
  std::vector<BipartiteState> stages;  // stages[0] = rho_3x3 ... stages[3] = final 4x5

  const BipartiteState& core() const { return stages.front(); }
  const BipartiteState& stage1() const { return stages.at(1); }
  const BipartiteState& stage2() const { return stages.at(2); }
  const BipartiteState& final_state() const { return stages.back(); }
};

/// Replays `steps` from `start`, lifting the recorded decomposition at
/// every step.
std::vector<BipartiteState> run_pipeline(const BipartiteState& start, const std::vector<ext::PipelineStep>& steps);

Rho4x5Pipeline rho_4x5_pipeline();
BipartiteState rho_4x5();
/// |00> + |11> + |22> on 4x5.
ExactVector rho_4x5_witness();

struct FamilySpec {
  std::size_t k = 2;
  /// Overrides d_1..d_{2k-2}; defaults to d_i = min(i, 2k-1-i).
  std::optional<std::vector<mpq_class>> d_weights;

  std::vector<mpq_class> weights() const;
};

/// rho^(k) on (2k-1) x (2k-1) with decomposition vectors named alpha,
/// b_i_j, g_i_j and d_i. Throws InvalidK for k < 2.
BipartiteState rho_family(const FamilySpec& spec);
ExactVector family_alpha(std::size_t k);

/// Schmidt-rank <= 2 decomposition of rho^(k),T_A into eta, mu and product
/// pieces. Custom weights above the defaults add product pieces on the
/// delta sites. Throws PreconditionViolation for weights below the defaults.
Decomposition family_pt_decomposition(const FamilySpec& spec);

/// Sites |i, 2k-1-i>, i = 1..2k-2, spanned by the D block of rho^(k),T_A.
std::vector<std::size_t> family_delta_sites(std::size_t k);
/// sum_{i=1}^{k-1} (|i,2k-1-i> - |2k-1-i,i>), restricted to the delta sites.
ExactVector family_omega(std::size_t k);

struct TilesComplement {
  BipartiteState state;
  /// Local factors of the five unextendible product vectors.
  std::vector<std::pair<ExactVector, ExactVector>> product_vectors;
};

/// 1 - sum of the normalized Tiles UPB projectors on 3x3.
TilesComplement tiles_complement();

/// (|00>+|11>)(<00|+<11|)/2 + |01><01|/2 + |10><10|/2 on 2x2.
BipartiteState qubit_counterexample();

BipartiteState maximally_mixed(Dims d);

}  // namespace locext
