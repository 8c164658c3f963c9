#pragma once

#include <cstddef>
#include <string>

#include "locext/bipartite.hpp"
#include "locext/separability.hpp"

namespace locext::ext {

/// SN(s) <= SN(A s A^dagger) + 1 for A = 1 - |phi><phi| on one side, with
/// the projected state classified by the separability rules.
struct ProjectionBound {
  BipartiteState projected;
  alg::SeparabilityReport projected_report;
  /// 0 when the projected state is not certified.
  std::size_t sn_upper = 0;
  std::string inequality;
};

ProjectionBound sn_bounds_from_projection(const BipartiteState& s, Side side, const ExactVector& phi,
                                          const alg::SeparabilityOptions& options = {});

}  // namespace locext::ext
