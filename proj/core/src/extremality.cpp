#include <string>

#include "frames.hpp"
#include "locext/errors.hpp"
#include "locext/extension.hpp"

namespace locext::ext {

const char* to_string(Extremality e) {
  switch (e) {
    case Extremality::Extremal: return "Extremal";
    case Extremality::NotExtremal: return "NotExtremal";
    case Extremality::NotCertified: return "NotCertified";
  }
  return "Unknown";
}

Decomposition rank_one_pieces(const ExactMatrix& m) {
  PsdVerdict v = psd_check(m);
  if (!v.psd) throw Error(ErrorKind::PreconditionViolation, "Schur complement is not PSD");
  const LdlFactorization& f = *v.factorization;
  Decomposition out;
  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < f.diag.size(); ++k) {
    if (sgn(f.diag[k]) == 0) continue;
    ExactVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[f.perm[i]] = f.lower(i, k);
    out.push_back({f.diag[k], std::move(col), "schur" + std::to_string(k)});
  }
  return out;
}

PsdExtremalityReport extremality_check_psd(const ExtensionBlocks& b) {
  PsdExtremalityReport out;
  out.edge_schur = schur_complement(b);
  out.flat = out.edge_schur.is_zero();
  out.pure_product = b.core.matrix().is_zero() && b.coupling.is_zero() && rank(b.edge) == 1;
  if (out.flat || out.pure_product) {
    out.verdict = Extremality::Extremal;
    return out;
  }
  out.verdict = Extremality::NotExtremal;
  ExtensionBlocks flat = b;
  flat.edge = b.edge - out.edge_schur;
  flat.edge.mark_hermitian();
  out.flat_part = std::move(flat);
  const Dims full = b.full_dims();
  const auto es = edge_sites(full, b.side, b.perp_index);
  for (auto& piece : rank_one_pieces(out.edge_schur)) {
    ExactVector v(full.total());
    for (std::size_t i = 0; i < es.size(); ++i) v[es[i]] = piece.vector[i];
    out.remainder.push_back({piece.weight, std::move(v), piece.name});
  }
  return out;
}

PptExtremalityReport extremality_check_ppt(const ExtensionBlocks& b) {
  // Work in the frame where the extension runs along A; there the partial
  // transpose on B keeps the block structure with core rho_c^{T_B},
  // coupling chi'[(a,c),b] = chi[(a,b),c] and edge rho_e^T.
  const BipartiteState full_state = to_a_frame(assemble_extension(b), b.side);
  const Dims fd = full_state.dims();
  const ExactMatrix pt = partial_transpose(full_state.matrix(), fd, Side::B);
  if (!is_psd(pt)) throw Error(ErrorKind::NotPPT, "extension is not PPT");
  const ExtensionBlocks fb = split_blocks(full_state, Side::A, b.perp_index);
  const ExtensionBlocks fb_pt = split_blocks(BipartiteState(fd, pt), Side::A, b.perp_index);
  const Dims d = fb.core.dims();

  PptExtremalityReport out;
  out.edge_schur = schur_complement(fb);
  out.edge_schur_pt = schur_complement(fb_pt);

  const Subspace rc = range(fb.core.matrix());
  const Subspace rc_pt = range(fb_pt.core.matrix());
  const Subspace re = range(out.edge_schur);
  const Subspace re_pt_conj = range(out.edge_schur_pt.conj());
  const std::size_t ambient = d.total() * d.b;

  // U = R(rho_c)_{AB} (x) conj R(rho_{e\c})_{B-bar}
  std::vector<ExactVector> u;
  for (const auto& r : rc.basis())
    for (const auto& s : re.basis()) {
      ExactVector w(ambient);
      for (std::size_t ab = 0; ab < d.total(); ++ab)
        for (std::size_t c = 0; c < d.b; ++c) w[ab * d.b + c] = r[ab] * s[c].conj();
      u.push_back(std::move(w));
    }
  // V = R(rho_c^{T_B})_{A B-bar} (x) conj R((rho^{T_B})_{e\c})_B
  std::vector<ExactVector> v;
  for (const auto& r : rc_pt.basis())
    for (const auto& s : re_pt_conj.basis()) {
      ExactVector w(ambient);
      for (std::size_t a = 0; a < d.a; ++a)
        for (std::size_t bb = 0; bb < d.b; ++bb)
          for (std::size_t c = 0; c < d.b; ++c) w[d.index(a, bb) * d.b + c] = r[d.index(a, c)] * s[bb];
      v.push_back(std::move(w));
    }
  out.intersection_dim =
      subspace_intersection(Subspace::span(u, ambient), Subspace::span(v, ambient)).dim();
  // R((rho^{T_A})_{e\c}) is the conjugate of R((rho^{T_B})_{e\c}).
  out.trivial_range_intersection = subspace_intersection(re, re_pt_conj).dim() == 0;
  out.verdict = out.intersection_dim == 0 && out.trivial_range_intersection ? Extremality::Extremal
                                                                             : Extremality::NotCertified;
  return out;
}

}  // namespace locext::ext
