#pragma once

#include <utility>
#include <vector>

#include "locext/bipartite.hpp"

namespace locext {

using Site = std::pair<std::size_t, std::size_t>;

/// Solid hyperedge: |e+> = sum over its sites of |ij>.
struct SolidEdge {
  std::vector<Site> sites;
  mpq_class weight{1};
};

/// Dashed edge: |e-> = |ij> - |kl>.
struct DashedEdge {
  Site first;
  Site second;
  mpq_class weight{1};
};

/// Weighted graph on an m x n grid describing a generalized grid state.
struct GridGraph {
  Dims dims;
  std::vector<SolidEdge> solid;
  std::vector<DashedEdge> dashed;

  /// Throws BoundsViolation / PreconditionViolation on malformed graphs.
  void validate() const;
  /// Edge vectors with weights, in the order solid then dashed.
  Decomposition edge_vectors() const;
};

/// sum w(e+)|e+><e+| + sum w(e-)|e-><e-|.
BipartiteState grid_to_state(const GridGraph& g, std::string label = "grid");

}  // namespace locext
