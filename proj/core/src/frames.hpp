#pragma once

// Side-B extensions run as swap -> extend along A -> swap back. These
// helpers move states and coupling matrices between the two frames.

#include "locext/bipartite.hpp"

namespace locext::ext {

inline BipartiteState to_a_frame(const BipartiteState& s, Side side) {
  return side == Side::A ? s : swap_subsystems(s);
}

inline BipartiteState from_a_frame(const BipartiteState& s, Side side) {
  return side == Side::A ? s : swap_subsystems(s);
}

inline ExactMatrix permute_coupling_rows(const ExactMatrix& chi, Dims row_dims) {
  ExactMatrix out(chi.rows(), chi.cols());
  for (std::size_t c = 0; c < chi.cols(); ++c) {
    const ExactVector col = swap_subsystems(chi.column(c), row_dims);
    for (std::size_t r = 0; r < col.size(); ++r)
      if (!col[r].is_zero()) out(r, c) = col[r];
  }
  return out;
}

/// frame_core: core dims in the A frame.
inline ExactMatrix coupling_from_a_frame(const ExactMatrix& chi, Dims frame_core, Side side) {
  return side == Side::A ? chi : permute_coupling_rows(chi, frame_core);
}

/// core: core dims in the original orientation.
inline ExactMatrix coupling_to_a_frame(const ExactMatrix& chi, Dims core, Side side) {
  return side == Side::A ? chi : permute_coupling_rows(chi, core);
}

}  // namespace locext::ext
