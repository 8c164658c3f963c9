#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "locext/errors.hpp"
#include "locext/families.hpp"
#include "locext/groebner.hpp"
#include "locext/linalg.hpp"
#include "locext/projection_bound.hpp"
#include "locext/range_matrix.hpp"
#include "locext/separability.hpp"
#include "locext/sn_certificate.hpp"

using namespace locext;
using namespace locext::alg;

namespace {

Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, unsigned max_deg, std::size_t terms) {
  std::vector<Term> ts;
  std::uniform_int_distribution<long> c(-4, 4);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m;
    unsigned deg = static_cast<unsigned>(rng() % (max_deg + 1));
    for (unsigned d = 0; d < deg; ++d) m.exp[rng() % nvars] += 1;
    m.refresh();
    long v = c(rng);
    if (v != 0) ts.push_back({m, testutil::rational(v, 1 + static_cast<long>(rng() % 3))});
  }
  return Polynomial::from_terms(ts);
}

std::vector<std::string> delta_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= 2 * k - 2; ++i) out.push_back("d_" + std::to_string(i));
  return out;
}

SNCertificate family_lower(std::size_t k) {
  auto f = rho_family({k});
  auto m = decomposition_coordinate_matrix(f, true);
  LowerOptions lo;
  lo.exclude_vars = delta_names(k);
  return certify_sn_lower(f, m, family_alpha(k), k, lo);
}

// Coordinates of v in the symbolic matrix's basis; also checks that
// substitution reproduces the matricization.
std::vector<mpq_class> coordinates_of(const SymbolicRangeMatrix& m, const ExactVector& v) {
  ExactMatrix cols = ExactMatrix::from_columns(m.basis, m.dims.total());
  auto x = solve_on_range(cols, v);
  REQUIRE(cols * x == v);
  std::vector<mpq_class> out;
  for (const auto& z : x) {
    REQUIRE(z.is_real());
    out.push_back(z.re());
  }
  REQUIRE(m.substitute(out) == matricize(v, m.dims));
  return out;
}

}  // namespace

TEST_SUITE("algcert") {

TEST_CASE("polynomial arithmetic and parsing") {
  PolyRing r({"x", "y", "z"});
  auto p = r.parse("(x + 2*y)^2 - 3/2*z");
  CHECK(r.str(p) == r.str(r.parse("x^2 + 4*x*y + 4*y^2 - 3/2*z")));
  CHECK(p == r.parse(r.str(p)));
  CHECK(p.degree() == 2);
  CHECK((p - p).is_zero());
  CHECK(p.evaluate({1, 1, 2}) == 6);
  for (const auto& t : p.terms()) CHECK(sgn(t.coeff) != 0);
  CHECK_THROWS_AS(r.parse("x + w"), Error);
  CHECK_THROWS_AS(r.parse("x +"), Error);
  // grevlex with x > y > z: x*z^2 < x^2*z < y^3
  CHECK(grevlex_compare(r.parse("x").lead().mono, r.parse("y").lead().mono) > 0);
  CHECK(grevlex_compare(r.parse("y^3").lead().mono, r.parse("x^2*z").lead().mono) > 0);
  CHECK(grevlex_compare(r.parse("x^2*z").lead().mono, r.parse("x*z^2").lead().mono) > 0);
}

TEST_CASE("buchberger examples") {
  PolyRing r({"x", "y"});
  auto g1 = buchberger({r.parse("x")});
  REQUIRE(g1.polys.size() == 1);
  CHECK(g1.polys[0] == r.parse("x"));

  auto g2 = buchberger({r.parse("x^2 + x*y"), r.parse("y^2")});
  CHECK(g2.contains(r.parse("x^3")));
  CHECK_FALSE(g2.contains(r.parse("x^2")));
  CHECK(is_groebner_basis(g2.polys));
}

TEST_CASE("normal form examples") {
  PolyRing r({"x", "y"});
  std::vector<Polynomial> g{r.parse("x^2 - y"), r.parse("x*y - 1")};
  auto gb = buchberger(g);
  CHECK(normal_form(r.parse("x^3 - x*y"), gb.polys).is_zero());
  CHECK(normal_form(Polynomial(mpq_class(1)), gb.polys) == Polynomial(mpq_class(1)));
  auto nf = normal_form_with_steps(r.parse("x^3 + y"), gb.polys);
  Polynomial rebuilt = nf.remainder;
  for (const auto& st : nf.steps) rebuilt += gb.polys[st.index].times(st.mono, st.coeff);
  CHECK(rebuilt == r.parse("x^3 + y"));
}

TEST_CASE("rho_3x3 coordinate matrix and its 2-minors") {
  auto m = range_coordinate_matrix(rho_3x3());
  CHECK(m.ring.names() == std::vector<std::string>{"psi00", "psi01", "psi02", "psi10", "psi20"});
  const char* pattern[3][3] = {{"psi00", "psi01", "psi02"}, {"psi10", "psi00", "psi01"}, {"psi20", "-psi10", "psi00"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(m.ring.str(m.at(i, j)) == pattern[i][j]);

  auto mi = minor_ideal(m, 2);
  CHECK(mi.total == 9);
  auto has = [&](const char* s) {
    auto p = m.ring.parse(s).monic();
    return std::find(mi.generators.begin(), mi.generators.end(), p) != mi.generators.end();
  };
  CHECK(has("psi00^2 + psi01*psi10"));
  CHECK(has("psi00^2 - psi01*psi10"));

  // the two printed minors alone already force psi00^2 = psi01 psi10 = 0
  auto gb = buchberger({m.ring.parse("psi00^2 + psi01*psi10"), m.ring.parse("psi00^2 - psi01*psi10")});
  CHECK(gb.contains(m.ring.parse("psi00^2")));
  CHECK(gb.contains(m.ring.parse("psi01*psi10")));
  CHECK_FALSE(gb.contains(m.ring.parse("psi00")));
}

TEST_CASE("4x5 coordinate matrix zero pattern") {
  auto m = range_coordinate_matrix(rho_4x5());
  CHECK(m.dims == Dims{4, 5});
  std::vector<std::pair<std::size_t, std::size_t>> zeros;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (m.at(i, j).is_zero()) zeros.emplace_back(i, j);
  CHECK(zeros == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 3}, {1, 4}, {2, 4}, {3, 1}});
  CHECK(minor_ideal(m, 3).total == 40);
  CHECK(m.overlap(rho_4x5_witness()) == m.ring.parse("3*psi00"));
}

TEST_CASE("pure product coordinate matrix") {
  BipartiteState pure({1, 1}, ExactMatrix{{1}});
  auto m = range_coordinate_matrix(pure);
  CHECK(m.dims == Dims{1, 1});
  CHECK_FALSE(m.at(0, 0).is_zero());
  CHECK(m.ring.size() == 1);
}

TEST_CASE("orthogonality precondition") {
  Dims d{2, 2};
  std::vector<ExactVector> basis{basis_ket(d, 0, 0), add(basis_ket(d, 0, 0), basis_ket(d, 1, 1))};
  CHECK_NOTHROW(range_coordinate_matrix(d, basis, {"a", "b"}));
  try {
    range_coordinate_matrix(d, basis, {"a", "b"}, true);
    FAIL("expected NonOrthogonalBasis");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonOrthogonalBasis);
  }
}

TEST_CASE("property: substitution reproduces the matricization") {
  std::mt19937_64 rng(41);
  auto s = rho_4x5();
  auto m = range_coordinate_matrix(s);
  for (int t = 0; t < 20; ++t) {
    std::vector<mpq_class> x;
    ExactVector v(s.dims().total());
    for (std::size_t l = 0; l < m.basis.size(); ++l) {
      x.emplace_back(static_cast<long>(rng() % 7) - 3);
      v = add(v, scaled(m.basis[l], x.back()));
    }
    CHECK(m.substitute(x) == matricize(v, s.dims()));
  }
}

TEST_CASE("4x5 lower certificate") {
  auto c = certify_sn_lower(rho_4x5(), rho_4x5_witness(), 3);
  REQUIRE(c.status == CertStatus::Certified);
  CHECK(c.value == 3);
  REQUIRE(c.lower);
  CHECK(c.lower->power == 4);
  CHECK(c.lower->stats.total == 40);
  CHECK(c.lower->groebner_basis.size() == 50);
  CHECK(verify_certificate(c).ok);
  // observed minimal N
  CHECK_FALSE(normal_form(c.lower->target.pow(3), c.lower->groebner_basis).is_zero());
  CHECK(normal_form(c.lower->target.pow(4), c.lower->groebner_basis).is_zero());
  for (const auto& g : c.lower->generators) CHECK(normal_form(g, c.lower->groebner_basis).is_zero());
}

TEST_CASE("rho_3x3 lower certificate with the e0 witness") {
  auto s = rho_3x3();
  auto c = certify_sn_lower(s, (*s.decomposition())[0].vector, 2);
  CHECK(c.status == CertStatus::Certified);
  CHECK(c.value == 2);
  CHECK(c.lower->power == 2);
  CHECK(verify_certificate(c).ok);
}

TEST_CASE("family lower certificates") {
  std::vector<std::size_t> kept{3, 21, 138}, gb{3, 24, 488};
  for (std::size_t k = 2; k <= 4; ++k) {
    CAPTURE(k);
    auto c = family_lower(k);
    REQUIRE(c.status == CertStatus::Certified);
    CHECK(c.value == k);
    CHECK(c.lower->power == k);
    CHECK(c.lower->generators.size() == kept[k - 2]);
    CHECK(c.lower->groebner_basis.size() == gb[k - 2]);
    CHECK_FALSE(c.lower->generators.empty());
    CHECK(verify_certificate(c).ok);
  }
}

TEST_CASE("separable diagonal state is inconclusive") {
  Dims d{2, 2};
  BipartiteState diag(d, ExactMatrix::diagonal({1, 1, 1, 1}));
  auto c = certify_sn_lower(diag, basis_ket(d, 0, 0), 2);
  CHECK(c.status == CertStatus::Inconclusive);
}

TEST_CASE("lower certificate errors") {
  Dims d{2, 2};
  BipartiteState s(d, ExactMatrix::diagonal({1, 0, 0, 1}));
  try {
    certify_sn_lower(s, basis_ket(d, 0, 1), 2);
    FAIL("expected WitnessNotInRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WitnessNotInRange);
  }
  try {
    certify_sn_lower(s, add(basis_ket(d, 0, 0), basis_ket(d, 1, 1)), 2);
    FAIL("expected NonSingleVariableOverlap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonSingleVariableOverlap);
  }
}

TEST_CASE("upper certificates") {
  Dims d{2, 3};
  auto v = kron(ExactVector{1, 2}, ExactVector{1, -1, GaussianRational(0, 1)});
  BipartiteState pure(d, ExactMatrix::outer(v, v));
  auto u = sn_upper_from_decomposition({{1, v, "v"}}, pure);
  CHECK(u.value == 1);
  CHECK(verify_certificate(u).ok);

  for (std::size_t k = 2; k <= 4; ++k) {
    auto f = rho_family({k});
    CHECK(sn_upper_from_decomposition(*f.decomposition(), f).value == k);
    BipartiteState pt(f.dims(), partial_transpose(f, Side::A));
    auto up = sn_upper_from_decomposition(family_pt_decomposition({k}), pt);
    CHECK(up.value == 2);
    CHECK(verify_certificate(up).ok);
  }
  try {
    sn_upper_from_decomposition({{2, v, "v"}}, pure);
    FAIL("expected DecompositionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DecompositionMismatch);
  }
}

TEST_CASE("separability rules") {
  BipartiteState diag({2, 3}, ExactMatrix::diagonal({1, 2, 0, 3, 1, 1}));
  auto r = separability_rules(diag);
  CHECK(r.verdict == SeparabilityVerdict::Separable);
  CHECK(r.rule == kRuleR2);
  CHECK(r.sn_upper == 1);

  auto p = rho_4x5_pipeline();
  auto proj = project_out_vector(p.stage2(), Side::B, unit_vector(4, 0));
  auto rp = separability_rules(proj);
  CHECK(rp.verdict == SeparabilityVerdict::Separable);
  CHECK(rp.rule == kRuleR2);
  std::size_t r1 = 0;
  for (const auto& b : rp.blocks) {
    CHECK(b.ppt);
    if (b.rule == kRuleR1) {
      ++r1;
      CHECK(((b.dims == Dims{2, 3}) || (b.dims == Dims{3, 2})));
    } else {
      CHECK(b.rule == kRuleProduct);
    }
  }
  CHECK(r1 == 1);

  auto r3 = separability_rules(rho_3x3());
  CHECK(r3.verdict == SeparabilityVerdict::SchmidtAtMost2);
  CHECK(r3.rule == kRuleR4);
  CHECK(r3.sn_upper == 2);
  CHECK(std::string(trusted_statement(kRuleR4)).size() > 0);

  auto q = separability_rules(rho_4x5());
  CHECK(q.verdict == SeparabilityVerdict::Unknown);
  CHECK(q.sn_upper == 0);
}

TEST_CASE("cofactor identity") {
  auto ci = cofactor_identity_check();
  REQUIRE(ci.g.size() == 5);
  for (bool b : ci.g_are_minors) CHECK(b);
  CHECK_FALSE(ci.printed_holds);
  CHECK(ci.ring.str(ci.printed_residue) == ci.ring.str(ci.ring.parse("psi00^2*psi02*psi20 + 2*psi01*psi02*psi10*psi20")));
  CHECK(ci.corrected_holds);
  CHECK_FALSE(ci.perturbed_holds);

  auto x00 = ci.ring.var("psi00"), x02 = ci.ring.var("psi02"), x20 = ci.ring.var("psi20");
  const mpq_class half(1, 2);
  auto lhs = x00 * (ci.g[4] - ci.g[2] - ci.g[3]) - x02 * ci.g[0] * half - x20 * ci.g[1] * half;
  auto rhs = x00.pow(4);
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    std::vector<mpq_class> pt;
    for (std::size_t i = 0; i < ci.ring.size(); ++i)
      pt.push_back(testutil::rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 5)));
    CHECK(lhs.evaluate(pt) == rhs.evaluate(pt));
  }
}

TEST_CASE("edge state checks") {
  auto e0 = unit_vector(3, 0), e2 = unit_vector(3, 2);
  auto r = edge_state_check(rho_3x3(), {{e0, e2}, {e2, e0}});
  CHECK(r.edge_state);
  CHECK(r.in_range == std::vector<bool>{true, true});
  CHECK(r.partial_conjugate_in_range == std::vector<bool>{false, false});

  BipartiteState prod({2, 2}, ExactMatrix::outer(basis_ket({2, 2}, 0, 0), basis_ket({2, 2}, 0, 0)));
  CHECK_FALSE(edge_state_check(prod, {{unit_vector(2, 0), unit_vector(2, 0)}}).edge_state);

  // regression: the grid product vectors of the 4x5 state
  auto s = rho_4x5();
  auto cands = basis_product_candidates(s);
  auto e = edge_state_check(s, cands);
  CHECK(e.candidates == cands.size());
  CHECK(e.edge_state);
}

TEST_CASE("property: normal form is idempotent") {
  auto m = range_coordinate_matrix(rho_4x5());
  auto gb = buchberger(minor_ideal(m, 3).generators);
  std::mt19937_64 rng(43);
  for (int t = 0; t < 200; ++t) {
    auto p = random_poly(rng, m.ring.size(), 4, 6);
    auto nf = normal_form(p, gb.polys);
    CHECK(normal_form(nf, gb.polys) == nf);
    CHECK(normal_form(p - nf, gb.polys).is_zero());
  }
}

TEST_CASE("property: membership ignores generator scaling and order") {
  auto m = range_coordinate_matrix(rho_4x5());
  auto gens = minor_ideal(m, 3).generators;
  auto ref = buchberger(gens);
  auto target = m.ring.var("psi00").pow(4);
  std::mt19937_64 rng(44);
  for (int t = 0; t < 5; ++t) {
    auto g = gens;
    std::shuffle(g.begin(), g.end(), rng);
    for (auto& p : g) p *= testutil::rational(static_cast<long>(1 + rng() % 9) * (rng() % 2 ? 1 : -1), 1 + static_cast<long>(rng() % 4));
    auto b = buchberger(g);
    CHECK(b.polys == ref.polys);
    CHECK(b.contains(target));
  }
}

TEST_CASE("trace replay detects tampering") {
  auto m = range_coordinate_matrix(rho_3x3());
  auto gens = minor_ideal(m, 2).generators;
  GroebnerOptions o;
  o.record_trace = true;
  auto gb = buchberger(gens, o);
  REQUIRE(gb.trace);
  CHECK_FALSE(replay_trace(gens, *gb.trace).has_value());
  auto bad = *gb.trace;
  bad.items.back() += Polynomial(mpq_class(1));
  CHECK(replay_trace(gens, bad).has_value());
}

TEST_CASE("property: the certified witness vanishes on sampled variety points") {
  // points t1|a1 b1> + ... with fewer than k product vectors from the range
  // have Schmidt rank below k, so they lie on the k-minor variety
  struct Case {
    BipartiteState s;
    SNCertificate c;
    SymbolicRangeMatrix m;
    std::size_t k;
  };
  auto s45 = rho_4x5();
  std::vector<Case> cases;
  cases.push_back({s45, certify_sn_lower(s45, rho_4x5_witness(), 3), range_coordinate_matrix(s45), 3});
  for (std::size_t k : {2u, 3u}) {
    auto f = rho_family({k});
    cases.push_back({f, family_lower(k), decomposition_coordinate_matrix(f, true), k});
  }
  std::mt19937_64 rng(45);
  for (auto& cs : cases) {
    REQUIRE(cs.c.status == CertStatus::Certified);
    auto cands = basis_product_candidates(cs.s);
    REQUIRE(cands.size() >= cs.k - 1);
    auto gens = minor_ideal(cs.m, cs.k).generators;
    for (int t = 0; t < 100; ++t) {
      ExactVector v(cs.s.dims().total());
      for (std::size_t i = 0; i + 1 < cs.k; ++i) {
        const auto& [a, b] = cands[rng() % cands.size()];
        v = add(v, scaled(kron(a, b), GaussianRational(testutil::rational(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)))));
      }
      auto x = coordinates_of(cs.m, v);
      for (const auto& g : gens) CHECK(sgn(g.evaluate(x)) == 0);
      CHECK(sgn(cs.c.lower->target.evaluate(x)) == 0);
    }
  }
}

TEST_CASE("lower never exceeds upper on the corpus") {
  auto p = rho_4x5_pipeline();
  auto r33 = rho_3x3();
  struct Entry {
    BipartiteState s;
    std::size_t lower;
  };
  auto certified = [](const SNCertificate& c) { return c.status == CertStatus::Certified ? c.value : 1; };
  std::vector<Entry> corpus{
      {r33, certified(certify_sn_lower(r33, (*r33.decomposition())[0].vector, 2))},
      {rho_4x5(), certified(certify_sn_lower(rho_4x5(), rho_4x5_witness(), 3))},
      {rho_family({2}), certified(family_lower(2))},
      {rho_family({3}), certified(family_lower(3))},
      {p.stage1(), 1},
      {p.stage2(), 1},
      {qubit_counterexample(), 1},
      {tiles_complement().state, 1}};
  for (const auto& e : corpus) {
    CAPTURE(e.s.label());
    std::size_t upper = 0;
    if (e.s.decomposition()) upper = sn_upper_from_decomposition(*e.s.decomposition(), e.s).value;
    auto sep = separability_rules(e.s);
    if (sep.sn_upper != 0) upper = upper == 0 ? sep.sn_upper : std::min(upper, sep.sn_upper);
    if (upper == 0) continue;  // no upper evidence, nothing to compare
    CHECK(e.lower <= upper);
  }
  CHECK(corpus[0].lower == 2);
  CHECK(corpus[1].lower == 3);
}

}  // TEST_SUITE
