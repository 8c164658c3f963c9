#include <doctest.h>

#include "locext/certificate.hpp"
#include "locext/errors.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"
#include "locext/serialize.hpp"
#include "locext/sn_certificate.hpp"

using namespace locext;
using nlohmann::json;

namespace {

bool parse_error_names(const std::function<void()>& f, const std::string& field) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::ParseError && std::string(e.what()).find(field) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_SUITE("serialize") {

TEST_CASE("scalar and matrix round trips") {
  GaussianRational z(mpq_class(-3, 4), mpq_class(5, 6));
  CHECK(io::to_json(z) == "-3/4+5/6i");
  CHECK(io::scalar_from_json(io::to_json(z)) == z);
  CHECK(io::scalar_from_json(json(7)) == GaussianRational(7));
  auto m = rho_4x5().matrix();
  CHECK(io::matrix_from_json(io::to_json(m)) == m);
  json sparse = {{"rows", 2}, {"cols", 2}, {"nonzero", {{0, 1, "1/2"}, {1, 0, "1/2"}}}};
  GaussianRational h(mpq_class(1, 2));
  CHECK(io::matrix_from_json(sparse) == ExactMatrix{{0, h}, {h, 0}});
}

TEST_CASE("state, graph and step round trips") {
  auto s = rho_3x3();
  auto back = io::state_from_json(io::to_json(s));
  CHECK(back.matrix() == s.matrix());
  CHECK(back.dims() == s.dims());
  CHECK(back.label() == s.label());
  REQUIRE(back.decomposition());
  CHECK(back.decomposition()->size() == s.decomposition()->size());

  auto g = rho_3x3_graph();
  auto gj = io::to_json(g);
  CHECK(grid_to_state(io::graph_from_json(gj)).matrix() == grid_to_state(g).matrix());
  json dashed = {{"dims", {2, 2}}, {"solid", json::array()},
                 {"dashed", {{{"sites", {{0, 0}, {1, 1}}}, {"weight", "2"}}}}};
  json legacy = {{"dims", {2, 2}}, {"solid", json::array()},
                 {"dashed", {{{"first", {0, 0}}, {"second", {1, 1}}, {"weight", "2"}}}}};
  CHECK(grid_to_state(io::graph_from_json(dashed)).matrix() == grid_to_state(io::graph_from_json(legacy)).matrix());

  auto p = rho_4x5_pipeline();
  std::vector<ext::PipelineStep> steps;
  for (const auto& st : p.steps) steps.push_back(io::step_from_json(io::to_json(st)));
  CHECK(run_pipeline(rho_3x3(), steps).back().matrix() == rho_4x5().matrix());
  ext::PipelineStep slocc;
  slocc.phi = unit_vector(3, 1);
  auto sb = io::step_from_json(io::to_json(slocc));
  CHECK(sb.kind == ext::PipelineStep::Kind::Slocc);
  CHECK(sb.phi == slocc.phi);
}

TEST_CASE("polynomial round trip") {
  alg::PolyRing r({"a", "b"});
  auto p = r.parse("a^3 - 2/3*a*b + 5");
  CHECK(io::polynomial_from_json(io::to_json(p, r), r) == p);
}

TEST_CASE("parse errors name the field") {
  CHECK(parse_error_names([] { io::scalar_from_json(json("1/x"), "w"); }, "'w'"));
  CHECK(parse_error_names([] { io::matrix_from_json(json{{"rows", 1}}); }, "matrix.cols"));
  CHECK(parse_error_names([] { io::state_from_json(json{{"type", "state"}, {"dims", {2}}}); }, "dims"));
  CHECK(parse_error_names([] { io::graph_from_json(json{{"dims", {2, 2}}, {"solid", {{{"sites", {{0}}}}}}}); },
                          "solid"));
  CHECK(parse_error_names([] { io::side_from_json(json("C")); }, "side"));
  // a non-PSD matrix is rejected by the state constructor, not the parser
  json neg = io::to_json(BipartiteState({1, 1}, ExactMatrix{{1}}));
  neg["matrix"]["entries"][0][0] = "-1";
  CHECK_THROWS_AS(io::state_from_json(neg), Error);
}

TEST_CASE("ppt certificates") {
  auto good = cert::ppt_certificate(rho_4x5());
  CHECK(good.ppt);
  CHECK(cert::verify(good).ok);
  auto j = cert::to_json(good);
  CHECK(cert::verify_json(j).ok);
  CHECK(cert::verify(cert::ppt_from_json(j)).ok);

  Dims d{2, 2};
  auto phi = add(basis_ket(d, 0, 0), basis_ket(d, 1, 1));
  auto bad = cert::ppt_certificate(BipartiteState(d, ExactMatrix::outer(phi, phi)));
  CHECK_FALSE(bad.ppt);
  CHECK(bad.failing == "partial_transpose");
  CHECK(bad.witness_value < 0);
  CHECK(cert::verify_json(cert::to_json(bad)).ok);

  auto forged = cert::to_json(bad);
  forged["witness_value"] = "-5";
  CHECK_FALSE(cert::verify_json(forged).ok);
}

TEST_CASE("sn certificates round trip and replay") {
  auto lower = alg::certify_sn_lower(rho_4x5(), rho_4x5_witness(), 3);
  auto j = cert::to_json(lower);
  CHECK(j["type"] == "sn_lower");
  CHECK(j["order"] == "grevlex");
  auto r = cert::verify_json(j);
  CHECK(r.ok);
  auto parsed = cert::sn_from_json(j);
  CHECK(alg::verify_certificate(parsed).ok);
  CHECK(parsed.lower->power == 4);
  CHECK(cert::verify_json(json::parse(j.dump())).ok);

  auto tampered = j;
  std::string g3 = tampered["groebner_basis"][3].get<std::string>();
  tampered["groebner_basis"][3] = g3 + " + psi00";
  auto t = cert::verify_json(tampered);
  CHECK_FALSE(t.ok);
  CHECK(t.message.find("reduction mismatch") != std::string::npos);

  auto truncated = j;
  truncated["groebner_basis"] = json::array({j["groebner_basis"][0]});
  auto tr = cert::verify_json(truncated);
  CHECK_FALSE(tr.ok);
  CHECK(tr.message.find("reduction mismatch") != std::string::npos);

  auto wrong_power = j;
  wrong_power["power"] = 3;
  CHECK_FALSE(cert::verify_json(wrong_power).ok);

  auto s = rho_4x5();
  auto upper = alg::sn_upper_from_decomposition(*s.decomposition(), s);
  auto uj = cert::to_json(upper);
  CHECK(cert::verify_json(uj).ok);
  auto ubad = uj;
  ubad["value"] = 2;
  CHECK_FALSE(cert::verify_json(ubad).ok);
}

TEST_CASE("extremality and projection certificates") {
  auto p = rho_4x5_pipeline();
  for (std::size_t s = 0; s < p.steps.size(); ++s) {
    auto c = cert::extremality_certificate(p.stages[s], p.steps[s]);
    CHECK(cert::verify(c).ok);
    auto j = cert::to_json(c);
    CHECK(cert::verify_json(j).ok);
    j["intersection_dim"] = c.intersection_dim + 1;
    CHECK_FALSE(cert::verify_json(j).ok);
  }
  auto pc = cert::projection_certificate(p.stage2(), Side::B, unit_vector(4, 0));
  CHECK(pc.bound.sn_upper == 2);
  auto pj = cert::to_json(pc);
  CHECK(cert::verify_json(pj).ok);
  CHECK(cert::verify(cert::projection_from_json(pj)).ok);
  pj["sn_upper"] = 1;
  CHECK_FALSE(cert::verify_json(pj).ok);
}

TEST_CASE("bundles and malformed certificates") {
  json bundle = {{"type", "bundle"},
                 {"certificates", {cert::to_json(cert::ppt_certificate(rho_3x3())),
                                   cert::to_json(cert::ppt_certificate(tiles_complement().state))}}};
  CHECK(cert::verify_json(bundle).ok);
  CHECK_THROWS_AS(cert::verify_json(json{{"type", "nonsense"}}), Error);
  auto j = cert::to_json(cert::ppt_certificate(rho_3x3()));
  j.erase("state");
  CHECK(parse_error_names([&] { cert::verify_json(j); }, "state"));
}

}  // TEST_SUITE
