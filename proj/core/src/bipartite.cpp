#include "locext/bipartite.hpp"

#include <algorithm>
#include <string>

#include "locext/errors.hpp"
#include "locext/linalg.hpp"

namespace locext {

ExactVector basis_ket(Dims d, std::size_t i, std::size_t j) {
  if (i >= d.a || j >= d.b)
    throw Error(ErrorKind::BoundsViolation, "site (" + std::to_string(i) + "," + std::to_string(j) +
                                                ") outside " + std::to_string(d.a) + "x" +
                                                std::to_string(d.b) + " grid");
  return unit_vector(d.total(), d.index(i, j));
}

ExactMatrix sum_of_projectors(const Decomposition& parts, std::size_t dim) {
  ExactMatrix m(dim, dim);
  for (const auto& p : parts) {
    if (p.vector.size() != dim) throw Error(ErrorKind::DimensionMismatch, "decomposition vector length");
    m += ExactMatrix::outer(p.vector, p.vector) * GaussianRational(p.weight);
  }
  return m;
}

ExactMatrix matricize(const ExactVector& v, Dims d) {
  if (v.size() != d.total()) throw Error(ErrorKind::DimensionMismatch, "matricize");
  ExactMatrix m(d.a, d.b);
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j) m(i, j) = v[d.index(i, j)];
  return m;
}

std::size_t schmidt_rank(const ExactVector& v, Dims d) { return rank(matricize(v, d)); }

BipartiteState::BipartiteState(Dims dims, ExactMatrix matrix, std::string label,
                               std::optional<Decomposition> decomposition)
    : dims_(dims), matrix_(std::move(matrix)), label_(std::move(label)),
      decomposition_(std::move(decomposition)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total())
    throw Error(ErrorKind::DimensionMismatch,
                "state matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                    ", expected " + std::to_string(dims_.total()));
  if (!matrix_.mark_hermitian()) throw Error(ErrorKind::NotHermitian, "state matrix is not Hermitian");
  PsdVerdict v = psd_check(matrix_);
  if (!v.psd)
    throw Error(ErrorKind::PreconditionViolation,
                "state matrix is not PSD (witness value " + v.witness_value.get_str() + ")");
  if (decomposition_ && !(sum_of_projectors(*decomposition_, dims_.total()) == matrix_))
    throw Error(ErrorKind::DecompositionMismatch, "recorded decomposition does not sum to the state");
}

ExactMatrix partial_transpose(const ExactMatrix& m, Dims d, Side side) {
  if (m.rows() != d.total() || m.cols() != d.total())
    throw Error(ErrorKind::DimensionMismatch, "partial_transpose");
  ExactMatrix out(d.total(), d.total());
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j)
      for (std::size_t k = 0; k < d.a; ++k)
        for (std::size_t l = 0; l < d.b; ++l) {
          const auto& src = side == Side::B ? m(d.index(i, l), d.index(k, j)) : m(d.index(k, j), d.index(i, l));
          if (!src.is_zero()) out(d.index(i, j), d.index(k, l)) = src;
        }
  if (m.hermitian_hint()) out.mark_hermitian();
  return out;
}

ExactMatrix partial_transpose(const BipartiteState& s, Side side) {
  return partial_transpose(s.matrix(), s.dims(), side);
}

std::pair<std::size_t, std::size_t> birank(const BipartiteState& s) {
  return {rank(s.matrix()), rank(partial_transpose(s, Side::A))};
}

bool is_ppt(const BipartiteState& s) { return is_psd(partial_transpose(s, Side::B)); }

ExactMatrix swap_subsystems(const ExactMatrix& m, Dims d) {
  const Dims sd = d.swapped();
  ExactMatrix out(d.total(), d.total());
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j)
      for (std::size_t k = 0; k < d.a; ++k)
        for (std::size_t l = 0; l < d.b; ++l) {
          const auto& src = m(d.index(i, j), d.index(k, l));
          if (!src.is_zero()) out(sd.index(j, i), sd.index(l, k)) = src;
        }
  if (m.hermitian_hint()) out.mark_hermitian();
  return out;
}

ExactVector swap_subsystems(const ExactVector& v, Dims d) {
  const Dims sd = d.swapped();
  ExactVector out(v.size());
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j) out[sd.index(j, i)] = v[d.index(i, j)];
  return out;
}

BipartiteState swap_subsystems(const BipartiteState& s) {
  std::optional<Decomposition> dec;
  if (s.decomposition()) {
    dec = Decomposition{};
    for (const auto& p : *s.decomposition())
      dec->push_back({p.weight, swap_subsystems(p.vector, s.dims()), p.name});
  }
  return BipartiteState(s.dims().swapped(), swap_subsystems(s.matrix(), s.dims()), s.label(), std::move(dec));
}

namespace {

void check_index_list(const std::vector<std::size_t>& idx, std::size_t bound, const char* what) {
  if (idx.empty()) throw Error(ErrorKind::BoundsViolation, std::string(what) + " index list is empty");
  std::vector<std::size_t> sorted = idx;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::BoundsViolation, std::string(what) + " index list has duplicates");
  if (sorted.back() >= bound)
    throw Error(ErrorKind::BoundsViolation, std::string(what) + " index " + std::to_string(sorted.back()) +
                                                " outside local dimension " + std::to_string(bound));
}

}  // namespace

ExactMatrix project_local_block(const ExactMatrix& m, Dims d, const std::vector<std::size_t>& rows_a,
                                const std::vector<std::size_t>& rows_b) {
  check_index_list(rows_a, d.a, "rows_a");
  check_index_list(rows_b, d.b, "rows_b");
  std::vector<std::size_t> idx;
  for (std::size_t i : rows_a)
    for (std::size_t j : rows_b) idx.push_back(d.index(i, j));
  ExactMatrix out = m.select(idx, idx);
  if (m.hermitian_hint()) out.mark_hermitian();
  return out;
}

BipartiteState project_local_block(const BipartiteState& s, const std::vector<std::size_t>& rows_a,
                                   const std::vector<std::size_t>& rows_b) {
  const Dims nd{rows_a.size(), rows_b.size()};
  return BipartiteState(nd, project_local_block(s.matrix(), s.dims(), rows_a, rows_b),
                        s.label().empty() ? std::string{} : s.label() + "|block");
}

BipartiteState project_out_vector(const BipartiteState& s, Side side, const ExactVector& phi) {
  const std::size_t local = s.dims().on(side);
  if (phi.size() != local) throw Error(ErrorKind::DimensionMismatch, "removed vector length");
  if (is_zero(phi)) throw Error(ErrorKind::PreconditionViolation, "removed vector is zero");
  ExactMatrix a = ExactMatrix::identity(local) -
                  ExactMatrix::outer(phi, phi) * GaussianRational(mpq_class(1) / inner(phi, phi).re());
  const ExactMatrix id_other = ExactMatrix::identity(s.dims().on(other(side)));
  const ExactMatrix op = side == Side::A ? kron(a, id_other) : kron(id_other, a);
  return BipartiteState(s.dims(), op * s.matrix() * op.adjoint(), s.label());
}

ExactMatrix trace_normalized(const ExactMatrix& m) {
  const GaussianRational t = m.trace();
  if (t.is_zero()) return m;
  return m * (GaussianRational(1) / t);
}

}  // namespace locext
