#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "locext/errors.hpp"
#include "locext/extension.hpp"
#include "locext/families.hpp"
#include "locext/grid_graph.hpp"
#include "locext/linalg.hpp"

using namespace locext;

namespace {

ExactMatrix projector(const ExactVector& v) { return ExactMatrix::outer(v, v); }

GridGraph random_graph(std::mt19937_64& rng) {
  GridGraph g;
  g.dims = {1 + rng() % 3, 1 + rng() % 3};
  auto site = [&] { return Site{rng() % g.dims.a, rng() % g.dims.b}; };
  std::size_t ns = rng() % 4, nd = rng() % 3;
  for (std::size_t e = 0; e < ns; ++e) {
    SolidEdge s;
    std::size_t len = 1 + rng() % 3;
    for (std::size_t t = 0; t < len; ++t) {
      Site x = site();
      if (std::find(s.sites.begin(), s.sites.end(), x) == s.sites.end()) s.sites.push_back(x);
    }
    s.weight = testutil::rational(static_cast<long>(1 + rng() % 4), static_cast<long>(1 + rng() % 3));
    g.solid.push_back(s);
  }
  if (g.dims.total() >= 2)
    for (std::size_t e = 0; e < nd; ++e) {
      Site x = site(), y = site();
      while (y == x) y = site();
      g.dashed.push_back({x, y, mpq_class(static_cast<long>(1 + rng() % 3))});
    }
  return g;
}

}  // namespace

TEST_SUITE("qstates") {

TEST_CASE("grid_to_state examples") {
  GridGraph g1{{2, 2}, {{{{0, 0}}, 1}}, {}};
  CHECK(grid_to_state(g1).matrix() == projector(basis_ket({2, 2}, 0, 0)));

  GridGraph g2{{2, 2}, {}, {{{0, 0}, {1, 1}, 1}}};
  auto minus = sub(basis_ket({2, 2}, 0, 0), basis_ket({2, 2}, 1, 1));
  CHECK(grid_to_state(g2).matrix() == projector(minus));

  CHECK(grid_to_state(rho_3x3_graph()).matrix().trace() == GaussianRational(13));
  CHECK(rho_3x3().matrix().trace() == GaussianRational(13));
}

TEST_CASE("grid graph validation") {
  GridGraph out_of_bounds{{2, 2}, {{{{2, 0}}, 1}}, {}};
  CHECK_THROWS_AS(out_of_bounds.validate(), Error);
  GridGraph same_site{{2, 2}, {}, {{{0, 1}, {0, 1}, 1}}};
  CHECK_THROWS_AS(same_site.validate(), Error);
  GridGraph zero_weight{{2, 2}, {{{{0, 0}}, 0}}, {}};
  CHECK_THROWS_AS(zero_weight.validate(), Error);
}

TEST_CASE("partial transpose examples") {
  auto diag = ExactMatrix::diagonal({1, 2, 3, 4, 5, 6});
  CHECK(partial_transpose(diag, {2, 3}, Side::A) == diag);
  CHECK(partial_transpose(diag, {2, 3}, Side::B) == diag);

  const Dims d{2, 2};
  auto phi = add(basis_ket(d, 0, 0), basis_ket(d, 1, 1));
  auto pt = partial_transpose(projector(phi), d, Side::B);
  // SWAP: eigenvalue -1 on the antisymmetric vector, nothing lower
  auto anti = sub(basis_ket(d, 0, 1), basis_ket(d, 1, 0));
  CHECK(pt * anti == scaled(anti, -1));
  auto shifted = pt + ExactMatrix::identity(4);
  CHECK(is_psd(shifted));
  CHECK(rank(shifted) == 3);
  CHECK_FALSE(is_psd(pt));
}

TEST_CASE("partial transpose index convention") {
  const Dims d{2, 3};
  ExactMatrix m(6, 6);
  // <il|rho|kj> lands at <ij|rho^{T_B}|kl>
  m(d.index(1, 2), d.index(0, 0)) = GaussianRational(7, 1);
  auto pb = partial_transpose(m, d, Side::B);
  CHECK(pb(d.index(1, 0), d.index(0, 2)) == GaussianRational(7, 1));
  auto pa = partial_transpose(m, d, Side::A);
  CHECK(pa(d.index(0, 2), d.index(1, 0)) == GaussianRational(7, 1));
}

TEST_CASE("birank examples") {
  auto prod = kron(ExactVector{1, 2}, ExactVector{1, 0, GaussianRational(0, 1)});
  BipartiteState pure({2, 3}, projector(prod));
  CHECK(birank(pure) == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(birank(rho_3x3()) == std::pair<std::size_t, std::size_t>{5, 6});
  // regression values of the constructed 4x5 state
  auto r = rho_4x5();
  CHECK(r.dims() == Dims{4, 5});
  CHECK(birank(r) == std::pair<std::size_t, std::size_t>{9, 10});
  CHECK(r.matrix().trace() == GaussianRational(31));
}

TEST_CASE("rho_3x3 structure") {
  auto s = rho_3x3();
  CHECK(is_ppt(s));
  auto pt = partial_transpose(s, Side::B);
  auto f = rho_3x3_pt_decomposition();
  CHECK(sum_of_projectors(f, 9) == pt);
  std::vector<mpq_class> w;
  for (const auto& p : f) w.push_back(p.weight);
  CHECK(w == std::vector<mpq_class>{1, 2, 1, 1, 1, 1});
  auto rk = range(s.matrix());
  CHECK(rk.contains(basis_ket({3, 3}, 0, 2)));
  CHECK(rk.contains(basis_ket({3, 3}, 2, 0)));
  CHECK_FALSE(rk.contains(basis_ket({3, 3}, 0, 0)));
}

TEST_CASE("4x5 pipeline") {
  auto p = rho_4x5_pipeline();
  REQUIRE(p.stages.size() == 4);
  CHECK(p.stage1().dims() == Dims{4, 3});
  CHECK(p.stage2().dims() == Dims{4, 4});
  CHECK(p.final_state().dims() == Dims{4, 5});
  for (const auto& st : p.stages) {
    CHECK(is_ppt(st));
    REQUIRE(st.decomposition());
    CHECK(sum_of_projectors(*st.decomposition(), st.dims().total()) == st.matrix());
  }
  CHECK(birank(p.stage2()) == std::pair<std::size_t, std::size_t>{8, 9});
  // the original 3x3 block survives every step
  auto block = project_local_block(p.final_state(), {0, 1, 2}, {0, 1, 2});
  CHECK(block.matrix() == rho_3x3().matrix());
  CHECK(run_pipeline(rho_3x3(), p.steps).back().matrix() == p.final_state().matrix());
}

TEST_CASE("project_local_block examples") {
  auto s = rho_3x3();
  CHECK(project_local_block(s, {0, 1, 2}, {0, 1, 2}).matrix() == s.matrix());
  auto b = project_local_block(s, {0, 2}, {1});
  CHECK(b.dims() == Dims{2, 1});
}

TEST_CASE("swap examples") {
  const Dims d{2, 3};
  BipartiteState s(d, projector(basis_ket(d, 0, 1)));
  auto t = swap_subsystems(s);
  CHECK(t.dims() == Dims{3, 2});
  CHECK(t.matrix() == projector(basis_ket({3, 2}, 1, 0)));
  auto r = rho_3x3();
  CHECK(swap_subsystems(swap_subsystems(r)).matrix() == r.matrix());
  auto phi = add(basis_ket({2, 2}, 0, 0), basis_ket({2, 2}, 1, 1));
  CHECK(swap_subsystems(projector(phi), {2, 2}) == projector(phi));
  auto v = kron(ExactVector{1, 2}, ExactVector{3, 4, 5});
  CHECK(swap_subsystems(v, d) == kron(ExactVector{3, 4, 5}, ExactVector{1, 2}));
}

TEST_CASE("family weights and structure") {
  CHECK(FamilySpec{2}.weights() == std::vector<mpq_class>{1, 1});
  CHECK(FamilySpec{3}.weights() == std::vector<mpq_class>{1, 2, 2, 1});
  auto f4 = rho_family({4});
  CHECK(f4.dims() == Dims{7, 7});
  auto f3 = rho_family({3});
  CHECK(birank(f3) == std::pair<std::size_t, std::size_t>{11, 12});
  CHECK(f3.matrix().trace() == GaussianRational(18));
  CHECK(schmidt_rank(family_alpha(4), {7, 7}) == 4);
  // edge structure: alpha plus beta edges of SR 2 plus products
  REQUIRE(f4.decomposition());
  for (const auto& p : *f4.decomposition()) {
    auto sr = schmidt_rank(p.vector, f4.dims());
    if (p.name == "alpha") CHECK(sr == 4);
    else CHECK(sr <= 2);
  }
  FamilySpec bad{3, std::vector<mpq_class>{1, 2}};
  CHECK_THROWS_AS(bad.weights(), Error);
}

TEST_CASE("InvalidK") {
  for (std::size_t k : {0u, 1u}) {
    try {
      rho_family({k});
      FAIL("expected InvalidK");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidK);
    }
  }
}

TEST_CASE("property: family is PPT and the d_i are minimal") {
  for (std::size_t k = 2; k <= 5; ++k) {
    CAPTURE(k);
    auto s = rho_family({k});
    CHECK(is_psd(s.matrix()));
    auto pt = partial_transpose(s, Side::A);
    CHECK(is_psd(pt));
    auto sites = family_delta_sites(k);
    auto dblock = pt.select(sites, sites);
    auto omega = family_omega(k);
    CHECK(is_zero(dblock * omega));
    for (std::size_t i = 0; i < sites.size(); ++i) CHECK_FALSE(omega[i].is_zero());
    CHECK(sum_of_projectors(family_pt_decomposition({k}), s.dims().total()) == pt);
  }
}

TEST_CASE("property: partial transpose algebra") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> u(-3, 3);
  for (int t = 0; t < 40; ++t) {
    Dims d{1 + rng() % 3, 1 + rng() % 3};
    ExactMatrix m(d.total(), d.total());
    for (std::size_t i = 0; i < d.total(); ++i)
      for (std::size_t j = 0; j < d.total(); ++j) m(i, j) = GaussianRational(u(rng), u(rng));
    CHECK(partial_transpose(partial_transpose(m, d, Side::A), d, Side::A) == m);
    CHECK(partial_transpose(partial_transpose(m, d, Side::B), d, Side::B) == m);
    CHECK(partial_transpose(partial_transpose(m, d, Side::A), d, Side::B) == m.transpose());
    CHECK(swap_subsystems(partial_transpose(m, d, Side::A), d) ==
          partial_transpose(swap_subsystems(m, d), d.swapped(), Side::B));
  }
}

TEST_CASE("property: grid states are PSD") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 60; ++t) {
    auto g = random_graph(rng);
    auto s = grid_to_state(g);  // the constructor verifies PSD exactly
    CHECK(is_psd(s.matrix()));
    CHECK(sum_of_projectors(g.edge_vectors(), g.dims.total()) == s.matrix());
  }
}

TEST_CASE("property: local projections compose") {
  auto s = rho_4x5();
  auto two_step = project_local_block(project_local_block(s, {0, 1, 3}, {0, 1, 2, 3, 4}), {0, 1, 2}, {1, 2, 4});
  CHECK(two_step.matrix() == project_local_block(s, {0, 1, 3}, {1, 2, 4}).matrix());
  auto nested = project_local_block(project_local_block(s, {0, 2, 3}, {0, 2, 3, 4}), {0, 2}, {1, 3});
  CHECK(nested.matrix() == project_local_block(s, {0, 3}, {2, 4}).matrix());
}

TEST_CASE("project_out_vector") {
  auto p = rho_4x5_pipeline();
  auto proj = project_out_vector(p.stage2(), Side::B, unit_vector(4, 0));
  CHECK(proj.dims() == p.stage2().dims());
  for (std::size_t i = 0; i < 4; ++i) {
    auto k = basis_ket({4, 4}, i, 0);
    CHECK(is_zero(proj.matrix() * k));
  }
}

TEST_CASE("tiles complement and qubit counterexample") {
  auto t = tiles_complement();
  CHECK(birank(t.state) == std::pair<std::size_t, std::size_t>{4, 4});
  CHECK(is_ppt(t.state));
  for (const auto& [a, b] : t.product_vectors) CHECK(is_zero(t.state.matrix() * kron(a, b)));
  auto q = qubit_counterexample();
  CHECK(is_ppt(q));
  CHECK(q.matrix().trace() == GaussianRational(2));
  CHECK(trace_normalized(q.matrix()).trace() == GaussianRational(1));
}

}  // TEST_SUITE
