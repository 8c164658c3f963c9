#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "locext/errors.hpp"
#include "locext/extension.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"
#include "locext/projection_bound.hpp"

using namespace locext;
using namespace locext::ext;

namespace {

BipartiteState random_state(std::mt19937_64& rng, Dims d, std::size_t terms) {
  ExactMatrix m(d.total(), d.total());
  for (std::size_t t = 0; t < terms; ++t) {
    auto v = testutil::rand_vector(rng, d.total(), -2, 2, true);
    m += ExactMatrix::outer(v, v);
  }
  return BipartiteState(d, m);
}

}  // namespace

TEST_SUITE("extender") {

TEST_CASE("direct sum has zero coupling") {
  auto core = rho_3x3();
  auto b = direct_sum_blocks(core, Side::A, ExactMatrix::diagonal({1, 2, 3}));
  auto full = assemble_extension(b);
  auto back = split_blocks(full, Side::A, 3);
  CHECK(back.coupling.is_zero());
  CHECK(back.core.matrix() == core.matrix());
  CHECK(back.edge == ExactMatrix::diagonal({1, 2, 3}));
}

TEST_CASE("split of the 4x5 state along the last B index") {
  auto b = split_blocks(rho_4x5(), Side::B, 4);
  CHECK(b.core.dims() == Dims{4, 4});
  CHECK(b.edge_dim() == 4);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < b.coupling.rows(); ++i)
    for (std::size_t j = 0; j < b.coupling.cols(); ++j)
      if (!b.coupling(i, j).is_zero()) ++nonzero;
  CHECK(nonzero == 1);
  CHECK(b.coupling(Dims{4, 4}.index(0, 2), 3) == GaussianRational(3));
  CHECK(is_psd(b.edge));
  CHECK(assemble_matrix(b) == rho_4x5().matrix());
}

TEST_CASE("property: assemble after split is the identity") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    Dims d = t % 2 ? Dims{3, 2} : Dims{2, 3};
    auto s = random_state(rng, d, 1 + rng() % 4);
    for (Side side : {Side::A, Side::B})
      for (std::size_t perp = 0; perp < d.on(side); ++perp) {
        auto b = split_blocks(s, side, perp);
        CHECK(assemble_matrix(b) == s.matrix());
      }
  }
}

TEST_CASE("schur complement examples") {
  BipartiteState core({1, 1}, ExactMatrix{{2}});
  ExtensionBlocks b{core, ExactMatrix{{1}}, ExactMatrix{{1}}, Side::A, 1};
  CHECK(schur_complement(b) == ExactMatrix{{GaussianRational(mpq_class(1, 2))}});
  CHECK(schur_complement(b, SchurKind::CoreMinusEdge) == ExactMatrix{{1}});

  auto ds = direct_sum_blocks(rho_3x3(), Side::A, ExactMatrix::diagonal({3, 0, 3}));
  CHECK(schur_complement(ds) == ds.edge);

  ExactMatrix chi(9, 3);
  for (std::size_t i = 0; i < 9; ++i) chi(i, 1) = rho_3x3().matrix()(i, 4);
  CHECK(schur_complement(flat_extension_blocks(rho_3x3(), Side::A, chi)).is_zero());
}

TEST_CASE("count bound arithmetic") {
  CHECK(extension_count_bound(3, 3, 5, 6) == 3);
  CHECK(extension_count_bound(3, 3, 4, 4) == -6);
  CHECK(extension_count_bound(2, 4, 8, 8) == 30);
  CHECK(extension_count_bound(2, 2, 4, 4) == 6);
}

TEST_CASE("extension space examples") {
  auto mm = ppt_extension_space(maximally_mixed({2, 2}));
  CHECK(mm.bound == 6);
  CHECK(mm.dimension == 8);
  CHECK(mm.trivial_dimension == 2);

  auto r = ppt_extension_space(rho_3x3());
  CHECK(r.bound == 3);
  CHECK(r.p == 5);
  CHECK(r.q == 6);
  CHECK(r.trivial_dimension == 3);
  CHECK(r.dimension >= 6);
  CHECK(r.dimension == 7);
  CHECK(r.real_dimension() == 14);
  std::size_t nontrivial = 0;
  for (const auto& chi : r.basis) {
    CHECK(r.contains(chi));
    if (!r.is_trivial(chi)) ++nontrivial;
  }
  CHECK(nontrivial > 0);

  auto t = ppt_extension_space(tiles_complement().state);
  CHECK(t.bound == -6);
  CHECK(t.dimension == 3);
  CHECK(t.trivial_dimension == 3);
}

TEST_CASE("property: solve routes agree and the SLOCC family solves") {
  auto p = rho_4x5_pipeline();
  std::vector<BipartiteState> corpus{rho_3x3(), p.stage1(), tiles_complement().state, qubit_counterexample(),
                                     rho_family({2}), maximally_mixed({2, 3})};
  for (const auto& s : corpus) {
    CAPTURE(s.label());
    for (Side side : {Side::A, Side::B}) {
      auto a = ppt_extension_space(s, side, SolveRoute::Intersection);
      auto b = ppt_extension_space(s, side, SolveRoute::StackedNullSpace);
      CHECK(a.solution == b.solution);
      CHECK(a.dimension == b.dimension);
      std::size_t m = s.dims().on(side);
      CHECK(a.dimension >= m);
      if (a.bound > 0) CHECK(a.dimension >= static_cast<std::size_t>(a.bound) + m);
      for (std::size_t i = 0; i < m; ++i) {
        auto chi = slocc_coupling(s, side, unit_vector(m, i));
        CHECK(a.contains(chi));
        CHECK(a.is_trivial(chi));
      }
    }
  }
}

TEST_CASE("tripartite vector round trip") {
  std::mt19937_64 rng(32);
  Dims d{2, 3};
  auto chi = testutil::rand_matrix(rng, 6, 3, -3, 3, true);
  CHECK(coupling_from_tripartite(tripartite_vector(chi, d), d) == chi);
}

TEST_CASE("slocc examples") {
  auto core = rho_3x3();
  auto zero = slocc_extension(core, Side::A, ExactVector(3));
  auto b = split_blocks(zero, Side::A, 3);
  CHECK(b.core.matrix() == core.matrix());
  CHECK(b.coupling.is_zero());
  CHECK(b.edge.is_zero());

  auto e0 = slocc_extension(core, Side::A, unit_vector(3, 0));
  CHECK(is_ppt(e0));
  CHECK(birank(e0) == std::pair<std::size_t, std::size_t>{5, 6});
  auto eb = slocc_extension(core, Side::B, ExactVector{1, GaussianRational(0, 1), -1});
  CHECK(eb.dims() == Dims{3, 4});
  CHECK(is_ppt(eb));
  CHECK(split_blocks(e0, Side::A, 3).coupling == slocc_coupling(core, Side::A, unit_vector(3, 0)));
}

TEST_CASE("product pair examples") {
  auto p = rho_4x5_pipeline();
  const auto& s2 = p.steps[1];
  auto b = product_pair_extension(p.stage1(), s2.side, s2.alpha, s2.beta, s2.gamma);
  auto st = assemble_extension(b);
  CHECK(is_ppt(st));
  CHECK(st.matrix() == p.stage2().matrix());
  auto space = ppt_extension_space(p.stage1(), Side::B);
  CHECK(space.contains(b.coupling));
  CHECK_FALSE(space.is_trivial(b.coupling));

  const auto& s3 = p.steps[2];
  auto b3 = product_pair_extension(p.stage2(), s3.side, s3.alpha, s3.beta, s3.gamma);
  CHECK(assemble_matrix(b3) == rho_4x5().matrix());

  try {
    product_pair_extension(p.stage1(), Side::B, s2.alpha, s2.beta, s2.beta);
    FAIL("expected PreconditionViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolation);
  }
}

TEST_CASE("flat extension examples") {
  auto core = rho_3x3();
  auto zero = flat_extension(core, Side::A, ExactMatrix(9, 3));
  CHECK(split_blocks(zero, Side::A, 3).edge.is_zero());

  ExactMatrix chi(9, 3);
  for (std::size_t i = 0; i < 9; ++i) chi(i, 0) = core.matrix()(i, 0);
  auto f = flat_extension(core, Side::A, chi);
  CHECK(rank(f.matrix()) == rank(core.matrix()));
  CHECK(is_psd(f.matrix()));
}

TEST_CASE("lift examples") {
  auto core = rho_3x3();
  auto ds = assemble_extension(direct_sum_blocks(core, Side::A, ExactMatrix::diagonal({3, 0, 3})));
  auto lr = lift_decomposition(ds, Side::A, 3, *core.decomposition());
  REQUIRE(lr.lifted.size() == core.decomposition()->size());
  for (std::size_t i = 0; i < lr.lifted.size(); ++i) {
    auto v = lr.lifted[i].vector;
    for (std::size_t j = 0; j < 9; ++j) CHECK(v[j] == (*core.decomposition())[i].vector[j]);
    for (std::size_t j = 9; j < 12; ++j) CHECK(v[j].is_zero());
  }
  CHECK(lr.edge_schur == ExactMatrix::diagonal({3, 0, 3}));
  CHECK(lr.max_increment() == 0);

  auto p = rho_4x5_pipeline();
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    const auto& prev = p.stages[s];
    std::size_t perp = prev.dims().on(p.steps[s].side);
    auto l = lift_decomposition(p.stages[s + 1], p.steps[s].side, perp, *prev.decomposition());
    CHECK(l.max_increment() <= 1);
    CHECK(sum_of_projectors(l.lifted, p.stages[s + 1].dims().total()) + l.remainder == p.stages[s + 1].matrix());
  }

  // one pure core vector
  Dims d{2, 2};
  auto psi = add(basis_ket(d, 0, 0), basis_ket(d, 1, 1));
  BipartiteState pure(d, ExactMatrix::outer(psi, psi));
  ExactMatrix chi(4, 2);
  chi(0, 0) = 1;
  chi(3, 0) = 1;
  chi(0, 1) = 2;
  chi(3, 1) = 2;
  auto ext = flat_extension(pure, Side::A, chi);
  auto pl = lift_decomposition(ext, Side::A, 2, {{1, psi, "psi"}});
  REQUIRE(pl.lifted.size() == 1);
  CHECK(pl.lifted_schmidt_ranks[0] <= schmidt_rank(psi, d) + 1);
  CHECK(pl.remainder.is_zero());

  CHECK_THROWS_AS(lift_decomposition(ds, Side::A, 3, {{1, psi, "x"}}), Error);
}

TEST_CASE("property: random lifts reconstruct exactly") {
  std::mt19937_64 rng(33);
  int done = 0;
  for (int t = 0; t < 50; ++t) {
    Dims d{2 + rng() % 2, 2 + rng() % 2};
    Side side = rng() % 2 ? Side::A : Side::B;
    std::size_t perp = rng() % d.on(side);
    Decomposition full;
    for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i)
      full.push_back({mpq_class(static_cast<long>(1 + rng() % 3)), testutil::rand_vector(rng, d.total(), -2, 2, true), ""});
    BipartiteState s(d, sum_of_projectors(full, d.total()));
    auto cs = core_sites(d, side, perp);
    Decomposition core;
    for (const auto& w : full) {
      ExactVector v;
      for (auto i : cs) v.push_back(w.vector[i]);
      core.push_back({w.weight, v, ""});
    }
    auto lr = lift_decomposition(s, side, perp, core);
    CHECK(lr.max_increment() <= 1);
    auto comp = complete_decomposition(lr, d, side, perp);
    CHECK(sum_of_projectors(comp, d.total()) == s.matrix());
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("projection bounds") {
  BipartiteState diag({2, 3}, ExactMatrix::diagonal({1, 2, 0, 3, 1, 1}));
  auto sep = sn_bounds_from_projection(diag, Side::B, unit_vector(3, 0));
  CHECK(sep.projected_report.verdict == alg::SeparabilityVerdict::Separable);
  CHECK(sep.sn_upper == 2);

  auto p = rho_4x5_pipeline();
  auto s2 = sn_bounds_from_projection(p.stage2(), Side::B, unit_vector(4, 0));
  CHECK(s2.projected_report.verdict == alg::SeparabilityVerdict::Separable);
  CHECK(s2.sn_upper == 2);

  auto f = sn_bounds_from_projection(rho_4x5(), Side::B, unit_vector(5, 0));
  CHECK(f.projected_report.verdict != alg::SeparabilityVerdict::Separable);
  CHECK(f.sn_upper != 2);
}

TEST_CASE("psd extremality examples") {
  auto core = rho_3x3();
  ExactMatrix chi(9, 3);
  for (std::size_t i = 0; i < 9; ++i) chi(i, 0) = core.matrix()(i, 0);
  auto flat = flat_extension_blocks(core, Side::A, chi);
  auto r = extremality_check_psd(flat);
  CHECK(r.verdict == Extremality::Extremal);
  CHECK(r.flat);

  auto admixed = flat;
  admixed.edge += ExactMatrix::outer(unit_vector(3, 2), unit_vector(3, 2));
  auto r2 = extremality_check_psd(admixed);
  CHECK(r2.verdict == Extremality::NotExtremal);
  REQUIRE(r2.flat_part);
  CHECK(schur_complement(*r2.flat_part).is_zero());
  CHECK(r2.remainder.size() == 1);
  auto rebuilt = assemble_matrix(*r2.flat_part);
  for (const auto& piece : r2.remainder) rebuilt += ExactMatrix::outer(piece.vector, piece.vector) * GaussianRational(piece.weight);
  CHECK(rebuilt == assemble_matrix(admixed));

  auto above = flat;
  above.edge += ExactMatrix::identity(3);
  CHECK(extremality_check_psd(above).verdict == Extremality::NotExtremal);
}

TEST_CASE("ppt extremality examples") {
  // core fixed to the first diagonal block of the written matrix
  auto q = qubit_counterexample();
  auto b = split_blocks(q, Side::A, 1);
  auto r = extremality_check_ppt(b);
  CHECK(r.verdict == Extremality::NotCertified);
  CHECK(r.trivial_range_intersection);
  CHECK(r.intersection_dim != 0);

  auto ds = direct_sum_blocks(rho_3x3(), Side::A, ExactMatrix::identity(3));
  auto r2 = extremality_check_ppt(ds);
  CHECK_FALSE(r2.trivial_range_intersection);
  CHECK(r2.verdict == Extremality::NotCertified);

  // regression values for the recorded pipeline
  auto p = rho_4x5_pipeline();
  std::vector<std::size_t> dims;
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    auto sb = step_blocks(p.stages[s], p.steps[s]);
    auto pr = extremality_check_ppt(sb);
    CHECK(pr.verdict == Extremality::NotCertified);
    dims.push_back(pr.intersection_dim);
    CHECK(extremality_check_psd(sb).verdict == Extremality::NotExtremal);
  }
  CHECK(dims == std::vector<std::size_t>{2, 1, 1});
}

TEST_CASE("peel examples") {
  Dims d{2, 2};
  auto w = ExactMatrix::diagonal({1, -2, 3, 4});
  auto r = witness_schur_peel(w, d, Side::A, 1);
  CHECK(r.peeled == ExactMatrix::diagonal({1, -2}));
  CHECK(r.psd_part == ExactMatrix::diagonal({0, 0, 3, 4}));
  CHECK(r.embedded + r.psd_part == w);

  ExactMatrix sw{{2, 0, 0, 0}, {0, 1, 1, 0}, {0, 1, 1, 0}, {0, 0, 0, 2}};
  auto s = witness_schur_peel(sw, d, Side::A, 1);
  CHECK(s.embedded + s.psd_part == sw);
  CHECK(s.psd_part_is_psd);
  CHECK(is_psd(s.psd_part));

  // coupling from site (0,1) into the zero edge block
  ExactMatrix v{{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}};
  try {
    witness_schur_peel(v, d, Side::A, 1);
    FAIL("expected RangeViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RangeViolation);
  }
}

TEST_CASE("property: random peels reassemble and keep a PSD part") {
  // indefinite W_c, arbitrary coupling, PSD W_e of random rank; draws whose
  // coupling leaves R(W_e) are rejected
  std::mt19937_64 rng(34);
  int accepted = 0, rejected = 0;
  while (accepted < 30) {
    Dims d{3, 3};
    std::size_t perp = rng() % 3;
    auto h = testutil::rand_hermitian(rng, d.total(), -3, 3, true);
    auto es = edge_sites(d, Side::A, perp);
    auto b = testutil::rand_matrix(rng, es.size(), 1 + rng() % es.size(), -2, 2, true);
    auto we = b * b.adjoint();
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = 0; j < es.size(); ++j) h(es[i], es[j]) = we(i, j);
    try {
      auto r = witness_schur_peel(h, d, Side::A, perp);
      CHECK(r.embedded + r.psd_part == h);
      CHECK(r.psd_part_is_psd);
      CHECK(is_psd(r.psd_part));
      ++accepted;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RangeViolation);
      ++rejected;
    }
    REQUIRE(rejected < 1000);
  }
}

TEST_CASE("pipeline step application") {
  auto p = rho_4x5_pipeline();
  for (std::size_t s = 0; s < p.steps.size(); ++s)
    CHECK(apply_step(p.stages[s], p.steps[s]).matrix() == p.stages[s + 1].matrix());
  CHECK(std::string(to_string(p.steps[0].kind)) == "direct_sum");
  PipelineStep flat;
  flat.kind = PipelineStep::Kind::Flat;
  flat.side = Side::A;
  flat.chi = ExactMatrix(9, 3);
  CHECK(apply_step(rho_3x3(), flat).dims() == Dims{4, 3});
}

}  // TEST_SUITE
