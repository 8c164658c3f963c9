#include "locext/families.hpp"

#include <algorithm>
#include <string>

#include "locext/errors.hpp"

namespace locext {

GridGraph rho_3x3_graph() {
  GridGraph g;
  g.dims = {3, 3};
  g.solid = {
      {{{0, 0}, {1, 1}, {2, 2}}, 1},
      {{{0, 1}, {1, 2}}, 1},
      {{{0, 2}}, 3},
      {{{2, 0}}, 3},
  };
  g.dashed = {{{1, 0}, {2, 1}, 1}};
  return g;
}

BipartiteState rho_3x3() {
  const GridGraph g = rho_3x3_graph();
  Decomposition parts = g.edge_vectors();
  // keep the e0..e4 order: e0, e1, e2 (dashed), e3, e4
  std::rotate(parts.begin() + 2, parts.begin() + 4, parts.end());
  const char* names[] = {"e0", "e1", "e2", "e3", "e4"};
  for (std::size_t i = 0; i < parts.size(); ++i) parts[i].name = names[i];
  ExactMatrix m = sum_of_projectors(parts, 9);
  return BipartiteState({3, 3}, std::move(m), "rho3x3", std::move(parts));
}

Decomposition rho_3x3_pt_decomposition() {
  const Dims d{3, 3};
  auto ket = [&](std::size_t i, std::size_t j) { return basis_ket(d, i, j); };
  return {
      {1, sub(add(ket(0, 2), ket(1, 1)), ket(2, 0)), "f0"},
      {2, add(ket(0, 2), ket(2, 0)), "f1"},
      {1, add(ket(0, 1), ket(1, 0)), "f2"},
      {1, add(ket(1, 2), ket(2, 1)), "f3"},
      {1, ket(0, 0), "f4"},
      {1, ket(2, 2), "f5"},
  };
}

std::vector<BipartiteState> run_pipeline(const BipartiteState& start, const std::vector<ext::PipelineStep>& steps) {
  std::vector<BipartiteState> out{start};
  for (const auto& step : steps) {
    const BipartiteState& prev = out.back();
    BipartiteState next = ext::apply_step(prev, step);
    const std::size_t perp = prev.dims().on(step.side);
    std::optional<Decomposition> dec;
    if (prev.decomposition()) {
      const ext::LiftResult lr = ext::lift_decomposition(next, step.side, perp, *prev.decomposition());
      dec = ext::complete_decomposition(lr, next.dims(), step.side, perp);
    }
    out.emplace_back(next.dims(), next.matrix(), next.label(), std::move(dec));
  }
  return out;
}

Rho4x5Pipeline rho_4x5_pipeline() {
  using ext::PipelineStep;
  Rho4x5Pipeline p;

  PipelineStep s1;
  s1.kind = PipelineStep::Kind::DirectSum;
  s1.side = Side::A;
  s1.edge = ExactMatrix::diagonal({3, 0, 3});
  s1.note = "admix 3|30><30| + 3|32><32| on a new A direction";

  PipelineStep s2;
  s2.kind = PipelineStep::Kind::ProductPair;
  s2.side = Side::B;
  s2.alpha = unit_vector(3, 0);
  s2.beta = unit_vector(4, 2);
  s2.gamma = scaled(unit_vector(4, 3), 3);
  s2.note = "chi = 3|20><perp,3| on a new B direction";

  PipelineStep s3;
  s3.kind = PipelineStep::Kind::ProductPair;
  s3.side = Side::B;
  s3.alpha = unit_vector(4, 2);
  s3.beta = unit_vector(4, 0);
  s3.gamma = scaled(unit_vector(4, 3), 3);
  s3.note = "chi = 3|02><perp,3| on a new B direction";

  p.steps = {s1, s2, s3};
  p.stages = run_pipeline(rho_3x3(), p.steps);
  const char* labels[] = {"rho3x3", "rho4x3", "rho4x4", "rho4x5"};
  for (std::size_t i = 0; i < p.stages.size(); ++i) p.stages[i].set_label(labels[i]);
  return p;
}

BipartiteState rho_4x5() { return rho_4x5_pipeline().final_state(); }

ExactVector rho_4x5_witness() {
  const Dims d{4, 5};
  return add(add(basis_ket(d, 0, 0), basis_ket(d, 1, 1)), basis_ket(d, 2, 2));
}

std::vector<mpq_class> FamilySpec::weights() const {
  if (k < 2) throw Error(ErrorKind::InvalidK, "k must be at least 2, got " + std::to_string(k));
  if (d_weights) {
    if (d_weights->size() != 2 * k - 2)
      throw Error(ErrorKind::PreconditionViolation,
                  "expected " + std::to_string(2 * k - 2) + " d weights, got " + std::to_string(d_weights->size()));
    for (const auto& w : *d_weights)
      if (sgn(w) < 0) throw Error(ErrorKind::PreconditionViolation, "d weights must be nonnegative");
    return *d_weights;
  }
  std::vector<mpq_class> out;
  for (std::size_t i = 1; i <= 2 * k - 2; ++i) out.emplace_back(static_cast<long>(std::min(i, 2 * k - 1 - i)));
  return out;
}

ExactVector family_alpha(std::size_t k) {
  if (k < 2) throw Error(ErrorKind::InvalidK, "k must be at least 2, got " + std::to_string(k));
  const Dims d{2 * k - 1, 2 * k - 1};
  ExactVector v(d.total());
  for (std::size_t i = 0; i < k; ++i) v[d.index(i, k - 1 - i)] = 1;
  return v;
}

BipartiteState rho_family(const FamilySpec& spec) {
  const std::vector<mpq_class> dw = spec.weights();
  const std::size_t k = spec.k;
  const std::size_t D = 2 * k - 1;
  const Dims d{D, D};
  auto ket = [&](std::size_t i, std::size_t j) { return basis_ket(d, i, j); };
  auto idx = [](std::size_t i, std::size_t j) { return std::to_string(i) + "_" + std::to_string(j); };

  Decomposition parts;
  parts.push_back({1, family_alpha(k), "alpha"});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i + j >= k) parts.push_back({1, add(ket(i, j), ket(D - j, D - i)), "b_" + idx(i, j)});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j + i + 1 < k; ++j) parts.push_back({1, ket(i, j), "g_" + idx(i, j)});
  for (std::size_t i = 1; i <= D - 1; ++i)
    if (sgn(dw[i - 1]) != 0) parts.push_back({dw[i - 1], ket(i, D - i), "d_" + std::to_string(i)});
  ExactMatrix m = sum_of_projectors(parts, d.total());
  return BipartiteState(d, std::move(m), "family" + std::to_string(k), std::move(parts));
}

Decomposition family_pt_decomposition(const FamilySpec& spec) {
  const std::vector<mpq_class> dw = spec.weights();
  const std::size_t k = spec.k;
  const std::size_t D = 2 * k - 1;
  const Dims d{D, D};
  auto ket = [&](std::size_t i, std::size_t j) { return basis_ket(d, i, j); };
  auto idx = [](std::size_t i, std::size_t j) { return std::to_string(i) + "_" + std::to_string(j); };

  Decomposition out;
  // gamma sites pair with the first site of a beta edge
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; a + b + 1 < k; ++b)
      out.push_back({1, add(ket(a, b), ket(k - 1 - b, k - 1 - a)), "eta_" + idx(a, b)});
  for (std::size_t a = 0; a < k; ++a) out.push_back({1, ket(a, k - 1 - a), "diag_" + idx(a, k - 1 - a)});
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i + j >= k) {
        out.push_back({1, ket(D - j, D - i), "beta2_" + idx(D - j, D - i)});
        out.push_back({1, add(ket(i, D - i), ket(D - j, j)), "mu_" + idx(i, j)});
      }
  for (std::size_t i = 1; i <= D - 1; ++i) {
    const mpq_class extra = dw[i - 1] - static_cast<long>(std::min(i, D - i));
    if (sgn(extra) < 0)
      throw Error(ErrorKind::PreconditionViolation,
                  "d_" + std::to_string(i) + " is below the minimal value; no decomposition is available");
    if (sgn(extra) > 0) out.push_back({extra, ket(i, D - i), "delta_" + std::to_string(i)});
  }
  return out;
}

std::vector<std::size_t> family_delta_sites(std::size_t k) {
  if (k < 2) throw Error(ErrorKind::InvalidK, "k must be at least 2, got " + std::to_string(k));
  const std::size_t D = 2 * k - 1;
  const Dims d{D, D};
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i <= D - 1; ++i) out.push_back(d.index(i, D - i));
  return out;
}

ExactVector family_omega(std::size_t k) {
  const std::size_t D = 2 * k - 1;
  // delta site i sits at position i - 1 of family_delta_sites
  ExactVector v(D - 1);
  for (std::size_t i = 1; i < k; ++i) {
    v[i - 1] = 1;
    v[D - i - 1] = -1;
  }
  return v;
}

TilesComplement tiles_complement() {
  const ExactVector e0 = unit_vector(3, 0), e1 = unit_vector(3, 1), e2 = unit_vector(3, 2);
  const ExactVector all = add(add(e0, e1), e2);
  TilesComplement out{maximally_mixed({3, 3}), {}};
  out.product_vectors = {
      {e0, sub(e0, e1)}, {sub(e0, e1), e2}, {e2, sub(e1, e2)}, {sub(e1, e2), e0}, {all, all},
  };
  ExactMatrix m = ExactMatrix::identity(9);
  for (const auto& [a, b] : out.product_vectors) {
    const ExactVector v = kron(a, b);
    m -= ExactMatrix::outer(v, v) * (GaussianRational(1) / inner(v, v));
  }
  out.state = BipartiteState({3, 3}, std::move(m), "tiles");
  return out;
}

BipartiteState qubit_counterexample() {
  const Dims d{2, 2};
  const ExactVector phi = add(basis_ket(d, 0, 0), basis_ket(d, 1, 1));
  Decomposition parts = {
      {mpq_class(1, 2), phi, "phi+"},
      {mpq_class(1, 2), basis_ket(d, 0, 1), "01"},
      {mpq_class(1, 2), basis_ket(d, 1, 0), "10"},
  };
  ExactMatrix m = sum_of_projectors(parts, 4);
  return BipartiteState(d, std::move(m), "qubit-counterexample", std::move(parts));
}

BipartiteState maximally_mixed(Dims d) {
  return BipartiteState(d, ExactMatrix::identity(d.total()), "identity");
}

}  // namespace locext
