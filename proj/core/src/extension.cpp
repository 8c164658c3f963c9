#include "locext/extension.hpp"

#include <algorithm>
#include <string>

#include "locext/errors.hpp"
#include "frames.hpp"

namespace locext::ext {

Dims ExtensionBlocks::full_dims() const {
  Dims d = core.dims();
  if (side == Side::A) ++d.a;
  else ++d.b;
  return d;
}

std::vector<std::size_t> core_sites(Dims full, Side side, std::size_t perp_index) {
  std::vector<std::size_t> out;
  out.reserve(full.total());
  for (std::size_t i = 0; i < full.a; ++i)
    for (std::size_t j = 0; j < full.b; ++j)
      if ((side == Side::A ? i : j) != perp_index) out.push_back(full.index(i, j));
  return out;
}

std::vector<std::size_t> edge_sites(Dims full, Side side, std::size_t perp_index) {
  std::vector<std::size_t> out;
  const std::size_t n = full.on(other(side));
  for (std::size_t e = 0; e < n; ++e)
    out.push_back(side == Side::A ? full.index(perp_index, e) : full.index(e, perp_index));
  return out;
}

namespace {

Dims core_dims_of(Dims full, Side side) {
  Dims d = full;
  if (side == Side::A) --d.a;
  else --d.b;
  return d;
}

void check_perp(Dims full, Side side, std::size_t perp_index) {
  if (perp_index >= full.on(side))
    throw Error(ErrorKind::BoundsViolation, "perp index " + std::to_string(perp_index) + " outside local dimension " +
                                                std::to_string(full.on(side)) + " of side " + to_string(side));
  if (full.on(side) < 2)
    throw Error(ErrorKind::BoundsViolation, "side " + std::string(to_string(side)) + " has no core left to split");
}

ExactMatrix embed(const ExactMatrix& block, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                  std::size_t total) {
  ExactMatrix out(total, total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!block(i, j).is_zero()) out(rows[i], cols[j]) = block(i, j);
  return out;
}

}  // namespace

ExtensionBlocks split_blocks(const BipartiteState& s, Side side, std::size_t perp_index) {
  const Dims full = s.dims();
  check_perp(full, side, perp_index);
  const auto cs = core_sites(full, side, perp_index);
  const auto es = edge_sites(full, side, perp_index);
  ExactMatrix core = s.matrix().select(cs, cs);
  core.mark_hermitian();
  ExactMatrix edge = s.matrix().select(es, es);
  edge.mark_hermitian();
  return ExtensionBlocks{BipartiteState(core_dims_of(full, side), std::move(core), s.label().empty() ? "" : s.label() + "|core"),
                         s.matrix().select(cs, es), std::move(edge), side, perp_index};
}

ExactMatrix assemble_matrix(const ExtensionBlocks& b) {
  const Dims full = b.full_dims();
  if (b.perp_index >= full.on(b.side))
    throw Error(ErrorKind::BoundsViolation, "perp index outside the extended dimension");
  const auto cs = core_sites(full, b.side, b.perp_index);
  const auto es = edge_sites(full, b.side, b.perp_index);
  if (b.coupling.rows() != cs.size() || b.coupling.cols() != es.size() || b.edge.rows() != es.size() ||
      b.edge.cols() != es.size())
    throw Error(ErrorKind::DimensionMismatch, "extension block shapes do not match the core");
  ExactMatrix out = embed(b.core.matrix(), cs, cs, full.total());
  out += embed(b.coupling, cs, es, full.total());
  out += embed(b.coupling.adjoint(), es, cs, full.total());
  out += embed(b.edge, es, es, full.total());
  return out;
}

BipartiteState assemble_extension(const ExtensionBlocks& b, std::string label) {
  return BipartiteState(b.full_dims(), assemble_matrix(b), std::move(label));
}

ExactMatrix schur_complement(const ExtensionBlocks& b, SchurKind which) {
  if (which == SchurKind::EdgeMinusCore)
    return b.edge - b.coupling.adjoint() * solve_on_range(b.core.matrix(), b.coupling);
  return b.core.matrix() - b.coupling * solve_on_range(b.edge, b.coupling.adjoint());
}

long extension_count_bound(long m, long n, long p, long q) { return (p + q - m * n) * n - m; }

ExactMatrix slocc_coupling(const BipartiteState& core, Side side, const ExactVector& phi) {
  const BipartiteState f = to_a_frame(core, side);
  const Dims d = f.dims();
  if (phi.size() != d.a) throw Error(ErrorKind::DimensionMismatch, "phi must live on side " + std::string(to_string(side)));
  // chi = rho_c (phi (x) 1_n)
  ExactMatrix lift(d.total(), d.b);
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t c = 0; c < d.b; ++c) lift(d.index(a, c), c) = phi[a];
  return coupling_from_a_frame(f.matrix() * lift, d, side);
}

BipartiteState slocc_extension(const BipartiteState& core, Side side, const ExactVector& phi) {
  const BipartiteState f = to_a_frame(core, side);
  const Dims d = f.dims();
  if (phi.size() != d.a) throw Error(ErrorKind::DimensionMismatch, "phi must live on side " + std::string(to_string(side)));
  ExactMatrix s(d.a + 1, d.a);
  for (std::size_t a = 0; a < d.a; ++a) {
    s(a, a) = 1;
    s(d.a, a) = phi[a].conj();
  }
  const ExactMatrix t = kron(s, ExactMatrix::identity(d.b));
  BipartiteState out({d.a + 1, d.b}, t * f.matrix() * t.adjoint(), core.label().empty() ? "" : core.label() + "+slocc");
  return from_a_frame(out, side);
}

namespace {

ExtensionBlocks blocks_from_a_frame(ExtensionBlocks fb, Side side) {
  if (side == Side::A) return fb;
  const Dims fd = fb.core.dims();
  ExtensionBlocks out{swap_subsystems(fb.core), coupling_from_a_frame(fb.coupling, fd, side), std::move(fb.edge),
                      Side::B, fb.perp_index};
  return out;
}

}  // namespace

ExtensionBlocks product_pair_extension(const BipartiteState& core, Side side, const ExactVector& alpha,
                                       const ExactVector& beta, const ExactVector& gamma) {
  const BipartiteState f = to_a_frame(core, side);
  const Dims d = f.dims();
  if (alpha.size() != d.a) throw Error(ErrorKind::DimensionMismatch, "alpha must live on the extended side");
  if (beta.size() != d.b || gamma.size() != d.b)
    throw Error(ErrorKind::DimensionMismatch, "beta and gamma must live on the other side");
  if (is_zero(alpha) || is_zero(beta) || is_zero(gamma))
    throw Error(ErrorKind::PreconditionViolation, "alpha, beta and gamma must be nonzero");

  const ExactVector ab = kron(alpha, beta);
  const ExactVector ag = kron(alpha, conj(gamma));
  const ExactMatrix& rho = f.matrix();
  const ExactMatrix rho_pt = partial_transpose(rho, d, Side::B);
  if (!range(rho).contains(ab))
    throw Error(ErrorKind::PreconditionViolation, "|alpha beta> is not in the range of the core");
  if (!range(rho_pt).contains(ag))
    throw Error(ErrorKind::PreconditionViolation, "|alpha gamma> is not in the range of the partially transposed core");
  const GaussianRational bg = inner(beta, gamma);
  if (bg.norm2() == inner(beta, beta).re() * inner(gamma, gamma).re())
    throw Error(ErrorKind::PreconditionViolation, "beta and gamma are parallel");
  ExactMatrix alpha_row(d.b, d.total());
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t b = 0; b < d.b; ++b) alpha_row(b, d.index(a, b)) = alpha[a].conj();
  const std::size_t local_rank = rank(alpha_row * rho * alpha_row.adjoint());
  if (local_rank <= 2)
    throw Error(ErrorKind::PreconditionViolation,
                "rank of <alpha|rho_c|alpha> is " + std::to_string(local_rank) + ", needs to exceed 2");

  const ExactMatrix chi = ExactMatrix::outer(ab, gamma);
  const GaussianRational c1 = inner(ab, solve_on_range(rho, ab));
  const GaussianRational c2 = inner(ag, solve_on_range(rho_pt, ag));
  ExactMatrix edge = ExactMatrix::outer(gamma, gamma) * c1 + ExactMatrix::outer(beta, beta) * c2;
  edge.mark_hermitian();

  ExtensionBlocks fb{f, chi, std::move(edge), Side::A, d.a};
  const ExactMatrix assembled = assemble_matrix(fb);
  const Dims full{d.a + 1, d.b};
  if (!assembled.is_hermitian() || !is_psd(assembled))
    throw Error(ErrorKind::PPTFailure, "assembled product-pair extension is not PSD");
  if (!is_psd(partial_transpose(assembled, full, Side::B)))
    throw Error(ErrorKind::PPTFailure, "assembled product-pair extension is not PPT");

  std::vector<ExactVector> trivial;
  for (std::size_t a = 0; a < d.a; ++a) {
    ExactMatrix l(d.total(), d.b);
    for (std::size_t c = 0; c < d.b; ++c) l(d.index(a, c), c) = 1;
    trivial.push_back(tripartite_vector(rho * l, d));
  }
  if (Subspace::span(trivial, d.a * d.b * d.b).contains(tripartite_vector(chi, d)))
    throw Error(ErrorKind::PreconditionViolation, "coupling lies in the SLOCC family");
  return blocks_from_a_frame(std::move(fb), side);
}

ExtensionBlocks flat_extension_blocks(const BipartiteState& core, Side side, const ExactMatrix& chi) {
  const std::size_t edge_dim = core.dims().on(other(side));
  if (chi.rows() != core.dims().total() || chi.cols() != edge_dim)
    throw Error(ErrorKind::DimensionMismatch, "coupling must be core x edge");
  ExactMatrix edge = chi.adjoint() * solve_on_range(core.matrix(), chi);
  edge.mark_hermitian();
  return ExtensionBlocks{core, chi, std::move(edge), side, core.dims().on(side)};
}

BipartiteState flat_extension(const BipartiteState& core, Side side, const ExactMatrix& chi) {
  return assemble_extension(flat_extension_blocks(core, side, chi), core.label().empty() ? "" : core.label() + "+flat");
}

ExtensionBlocks direct_sum_blocks(const BipartiteState& core, Side side, const ExactMatrix& edge) {
  const std::size_t edge_dim = core.dims().on(other(side));
  if (edge.rows() != edge_dim || edge.cols() != edge_dim)
    throw Error(ErrorKind::DimensionMismatch, "edge block must be square over the other side");
  ExactMatrix e = edge;
  if (!e.mark_hermitian()) throw Error(ErrorKind::NotHermitian, "edge block is not Hermitian");
  return ExtensionBlocks{core, ExactMatrix(core.dims().total(), edge_dim), std::move(e), side, core.dims().on(side)};
}

std::size_t LiftResult::max_increment() const {
  std::size_t worst = 0;
  for (std::size_t i = 0; i < lifted_schmidt_ranks.size(); ++i)
    if (lifted_schmidt_ranks[i] > core_schmidt_ranks[i])
      worst = std::max(worst, lifted_schmidt_ranks[i] - core_schmidt_ranks[i]);
  return worst;
}

LiftResult lift_decomposition(const BipartiteState& ext, Side side, std::size_t perp_index,
                              const Decomposition& core_vectors) {
  const ExtensionBlocks b = split_blocks(ext, side, perp_index);
  const Dims full = ext.dims();
  const Dims cd = b.core.dims();
  if (!(sum_of_projectors(core_vectors, cd.total()) == b.core.matrix()))
    throw Error(ErrorKind::DecompositionMismatch, "core vectors do not sum to the core block");
  const auto cs = core_sites(full, side, perp_index);
  const auto es = edge_sites(full, side, perp_index);
  const ExactMatrix chi_adj = b.coupling.adjoint();

  LiftResult out;
  for (const auto& wv : core_vectors) {
    const ExactVector tail = chi_adj * solve_on_range(b.core.matrix(), wv.vector);
    ExactVector v(full.total());
    for (std::size_t i = 0; i < cs.size(); ++i) v[cs[i]] = wv.vector[i];
    for (std::size_t i = 0; i < es.size(); ++i) v[es[i]] = tail[i];
    out.core_schmidt_ranks.push_back(schmidt_rank(wv.vector, cd));
    out.lifted_schmidt_ranks.push_back(schmidt_rank(v, full));
    out.lifted.push_back({wv.weight, std::move(v), wv.name});
  }
  out.edge_schur = schur_complement(b);
  out.remainder = embed(out.edge_schur, es, es, full.total());
  if (!(sum_of_projectors(out.lifted, full.total()) + out.remainder == ext.matrix()))
    throw Error(ErrorKind::DecompositionMismatch, "lifted vectors and remainder do not reproduce the extension");
  return out;
}

Decomposition complete_decomposition(const LiftResult& r, Dims full, Side side, std::size_t perp_index) {
  Decomposition out = r.lifted;
  const auto es = edge_sites(full, side, perp_index);
  for (auto& piece : rank_one_pieces(r.edge_schur)) {
    ExactVector v(full.total());
    for (std::size_t i = 0; i < es.size(); ++i) v[es[i]] = piece.vector[i];
    out.push_back({piece.weight, std::move(v), "edge" + std::to_string(out.size())});
  }
  return out;
}

PeelResult witness_schur_peel(const ExactMatrix& w, Dims dims, Side side, std::size_t perp_index) {
  if (w.rows() != dims.total() || w.cols() != dims.total())
    throw Error(ErrorKind::DimensionMismatch, "witness shape does not match dims");
  if (!w.hermitian_hint() && !w.is_hermitian()) throw Error(ErrorKind::NotHermitian, "witness is not Hermitian");
  check_perp(dims, side, perp_index);
  const auto cs = core_sites(dims, side, perp_index);
  const auto es = edge_sites(dims, side, perp_index);
  const ExactMatrix wc = w.select(cs, cs);
  const ExactMatrix chi = w.select(cs, es);
  const ExactMatrix we = w.select(es, es);
  const ExactMatrix x = solve_on_range(we, chi.adjoint());
  const ExactMatrix flat = chi * x;

  PeelResult out;
  out.peeled = wc - flat;
  out.embedded = embed(out.peeled, cs, cs, dims.total());
  out.psd_part = embed(flat, cs, cs, dims.total());
  out.psd_part += embed(chi, cs, es, dims.total());
  out.psd_part += embed(chi.adjoint(), es, cs, dims.total());
  out.psd_part += embed(we, es, es, dims.total());
  out.psd_part.mark_hermitian();
  out.psd_part_is_psd = is_psd(out.psd_part);
  return out;
}

const char* to_string(PipelineStep::Kind k) {
  switch (k) {
    case PipelineStep::Kind::Slocc: return "slocc";
    case PipelineStep::Kind::ProductPair: return "product_pair";
    case PipelineStep::Kind::DirectSum: return "direct_sum";
    case PipelineStep::Kind::Flat: return "flat";
  }
  return "unknown";
}

ExtensionBlocks step_blocks(const BipartiteState& s, const PipelineStep& step) {
  switch (step.kind) {
    case PipelineStep::Kind::Slocc: {
      BipartiteState out = slocc_extension(s, step.side, step.phi);
      return split_blocks(out, step.side, s.dims().on(step.side));
    }
    case PipelineStep::Kind::ProductPair:
      return product_pair_extension(s, step.side, step.alpha, step.beta, step.gamma);
    case PipelineStep::Kind::DirectSum:
      return direct_sum_blocks(s, step.side, step.edge);
    case PipelineStep::Kind::Flat:
      return flat_extension_blocks(s, step.side, step.chi);
  }
  throw Error(ErrorKind::PreconditionViolation, "unknown pipeline step");
}

BipartiteState apply_step(const BipartiteState& s, const PipelineStep& step) {
  std::string label = s.label();
  if (!label.empty()) label += std::string("+") + to_string(step.kind);
  return assemble_extension(step_blocks(s, step), std::move(label));
}

}  // namespace locext::ext
