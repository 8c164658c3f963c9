#include <string>

#include "frames.hpp"
#include "locext/errors.hpp"
#include "locext/extension.hpp"

namespace locext::ext {

// Tripartite ordering: A, B, then the edge copy of B ("B-bar"), so that
// chi~[a,b,c] sits at (a * n + b) * n + c.

ExactVector tripartite_vector(const ExactMatrix& chi, Dims d) {
  if (chi.rows() != d.total() || chi.cols() != d.b)
    throw Error(ErrorKind::DimensionMismatch, "coupling must be (m n) x n in the A frame");
  ExactVector v(d.total() * d.b);
  for (std::size_t r = 0; r < d.total(); ++r)
    for (std::size_t c = 0; c < d.b; ++c) v[r * d.b + c] = chi(r, c);
  return v;
}

ExactMatrix coupling_from_tripartite(const ExactVector& v, Dims d) {
  if (v.size() != d.total() * d.b) throw Error(ErrorKind::DimensionMismatch, "tripartite vector length");
  ExactMatrix chi(d.total(), d.b);
  for (std::size_t r = 0; r < d.total(); ++r)
    for (std::size_t c = 0; c < d.b; ++c)
      if (!v[r * d.b + c].is_zero()) chi(r, c) = v[r * d.b + c];
  return chi;
}

namespace {

/// R_{AB} (x) C^n_{B-bar}
std::vector<ExactVector> lift_ab(const Subspace& r, Dims d) {
  std::vector<ExactVector> out;
  for (const auto& v : r.basis())
    for (std::size_t c = 0; c < d.b; ++c) {
      ExactVector w(d.total() * d.b);
      for (std::size_t ab = 0; ab < d.total(); ++ab) w[ab * d.b + c] = v[ab];
      out.push_back(std::move(w));
    }
  return out;
}

/// R_{A B-bar} (x) C^n_B
std::vector<ExactVector> lift_ac(const Subspace& r, Dims d) {
  std::vector<ExactVector> out;
  for (const auto& v : r.basis())
    for (std::size_t b = 0; b < d.b; ++b) {
      ExactVector w(d.total() * d.b);
      for (std::size_t a = 0; a < d.a; ++a)
        for (std::size_t c = 0; c < d.b; ++c) w[d.index(a, b) * d.b + c] = v[d.index(a, c)];
      out.push_back(std::move(w));
    }
  return out;
}

/// (1 - P) (x) 1 acting on the tripartite space, P on AB.
ExactMatrix complement_on_ab(const ExactMatrix& p, Dims d) {
  const ExactMatrix q = ExactMatrix::identity(d.total()) - p;
  return kron(q, ExactMatrix::identity(d.b));
}

/// (1 - P) on A B-bar, identity on B.
ExactMatrix complement_on_ac(const ExactMatrix& p, Dims d) {
  const ExactMatrix q = ExactMatrix::identity(d.total()) - p;
  const std::size_t t = d.total() * d.b;
  ExactMatrix out(t, t);
  for (std::size_t a = 0; a < d.a; ++a)
    for (std::size_t b = 0; b < d.b; ++b)
      for (std::size_t c = 0; c < d.b; ++c)
        for (std::size_t a2 = 0; a2 < d.a; ++a2)
          for (std::size_t c2 = 0; c2 < d.b; ++c2) {
            const auto& val = q(d.index(a, c), d.index(a2, c2));
            if (!val.is_zero()) out(d.index(a, b) * d.b + c, d.index(a2, b) * d.b + c2) = val;
          }
  return out;
}

Subspace trivial_space(const ExactMatrix& rho, Dims d) {
  std::vector<ExactVector> gens;
  for (std::size_t a = 0; a < d.a; ++a) {
    ExactMatrix l(d.total(), d.b);
    for (std::size_t c = 0; c < d.b; ++c) l(d.index(a, c), c) = 1;
    gens.push_back(tripartite_vector(rho * l, d));
  }
  return Subspace::span(gens, d.total() * d.b);
}

}  // namespace

ExtensionSpace ppt_extension_space(const BipartiteState& core, Side side, SolveRoute route) {
  const BipartiteState f = to_a_frame(core, side);
  const Dims d = f.dims();
  const ExactMatrix& rho = f.matrix();
  const ExactMatrix rho_pt = partial_transpose(rho, d, Side::B);
  if (!is_psd(rho_pt)) throw Error(ErrorKind::NotPPT, "core state is not PPT");

  const Subspace r1 = range(rho);
  const Subspace r2 = range(rho_pt);
  const std::size_t ambient = d.total() * d.b;

  ExtensionSpace out;
  out.core_dims = core.dims();
  out.side = side;
  out.p = r1.dim();
  out.q = r2.dim();
  out.bound = extension_count_bound(static_cast<long>(d.a), static_cast<long>(d.b), static_cast<long>(out.p),
                                    static_cast<long>(out.q));
  if (route == SolveRoute::Intersection) {
    out.solution = subspace_intersection(Subspace::span(lift_ab(r1, d), ambient), Subspace::span(lift_ac(r2, d), ambient));
  } else {
    const ExactMatrix c1 = complement_on_ab(orth_projector(r1), d);
    const ExactMatrix c2 = complement_on_ac(orth_projector(r2), d);
    ExactMatrix stacked(2 * ambient, ambient);
    for (std::size_t i = 0; i < ambient; ++i)
      for (std::size_t j = 0; j < ambient; ++j) {
        if (!c1(i, j).is_zero()) stacked(i, j) = c1(i, j);
        if (!c2(i, j).is_zero()) stacked(ambient + i, j) = c2(i, j);
      }
    out.solution = rank_and_kernel(stacked).kernel;
  }
  out.trivial = trivial_space(rho, d);
  out.dimension = out.solution.dim();
  out.trivial_dimension = out.trivial.dim();
  for (const auto& v : out.solution.basis())
    out.basis.push_back(coupling_from_a_frame(coupling_from_tripartite(v, d), d, side));
  for (const auto& v : out.trivial.basis())
    out.trivial_basis.push_back(coupling_from_a_frame(coupling_from_tripartite(v, d), d, side));
  return out;
}

namespace {

ExactVector to_frame_vector(const ExtensionSpace& s, const ExactMatrix& chi) {
  const Dims fd = s.side == Side::A ? s.core_dims : s.core_dims.swapped();
  return tripartite_vector(coupling_to_a_frame(chi, s.core_dims, s.side), fd);
}

}  // namespace

bool ExtensionSpace::contains(const ExactMatrix& chi) const { return solution.contains(to_frame_vector(*this, chi)); }

bool ExtensionSpace::is_trivial(const ExactMatrix& chi) const { return trivial.contains(to_frame_vector(*this, chi)); }

}  // namespace locext::ext
