#include "locext/certificate.hpp"

#include "locext/errors.hpp"
#include "locext/serialize.hpp"

namespace locext::cert {

using io::to_json;

namespace {

VerifyResult fail(std::string msg) { return {false, std::move(msg)}; }

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + why);
}

const json& member(const json& j, const char* key, const std::string& field = "certificate") {
  if (!j.is_object()) bad(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(field + "." + key, "missing");
  return *it;
}

template <class T>
T get(const json& j, const char* key, const std::string& field = "certificate") {
  try {
    return member(j, key, field).get<T>();
  } catch (const json::exception& e) {
    bad(field + "." + key, e.what());
  }
}

Dims dims_of(const json& j) {
  const auto v = get<std::vector<std::size_t>>(j, "dims");
  if (v.size() != 2) bad("certificate.dims", "expected [m, n]");
  return {v[0], v[1]};
}

json dims_json(Dims d) { return json::array({d.a, d.b}); }

ext::Extremality extremality_from(const std::string& s, const std::string& field) {
  for (auto e : {ext::Extremality::Extremal, ext::Extremality::NotExtremal, ext::Extremality::NotCertified})
    if (s == ext::to_string(e)) return e;
  bad(field, "unknown extremality verdict '" + s + "'");
}

// Polynomials and monomials are written in the certificate's variable names.
json poly_list(const std::vector<alg::Polynomial>& ps, const alg::PolyRing& r) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(r.str(p));
  return out;
}

std::vector<alg::Polynomial> poly_list_from(const json& j, const alg::PolyRing& r, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array");
  std::vector<alg::Polynomial> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) bad(field + "[" + std::to_string(i) + "]", "expected a polynomial string");
    try {
      out.push_back(r.parse(j[i].get<std::string>()));
    } catch (const Error& e) {
      bad(field + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return out;
}

json index_json(std::size_t i) { return i == alg::kNoIndex ? json(nullptr) : json(i); }

std::size_t index_from(const json& j, const char* key, const std::string& field) {
  if (!j.contains(key) || j[key].is_null()) return alg::kNoIndex;
  return get<std::size_t>(j, key, field);
}

json trace_json(const alg::GroebnerTrace& t, const alg::PolyRing& r) {
  json der = json::array();
  for (const auto& d : t.derivations) {
    json steps = json::array();
    for (const auto& s : d.steps) steps.push_back({s.index, r.str(s.mono), s.coeff.get_str()});
    der.push_back({{"generator", index_json(d.generator)},
                   {"left", index_json(d.left)},
                   {"right", index_json(d.right)},
                   {"scale", d.scale.get_str()},
                   {"steps", steps}});
  }
  return {{"items", poly_list(t.items, r)}, {"derivations", der}};
}

alg::GroebnerTrace trace_from(const json& j, const alg::PolyRing& r) {
  alg::GroebnerTrace t;
  t.items = poly_list_from(member(j, "items", "trace"), r, "trace.items");
  const json& der = member(j, "derivations", "trace");
  if (!der.is_array()) bad("trace.derivations", "expected an array");
  for (std::size_t n = 0; n < der.size(); ++n) {
    const std::string f = "trace.derivations[" + std::to_string(n) + "]";
    alg::Derivation d;
    d.generator = index_from(der[n], "generator", f);
    d.left = index_from(der[n], "left", f);
    d.right = index_from(der[n], "right", f);
    d.scale = io::rational_from_json(member(der[n], "scale", f), f + ".scale");
    const json& steps = member(der[n], "steps", f);
    if (!steps.is_array()) bad(f + ".steps", "expected an array");
    for (std::size_t s = 0; s < steps.size(); ++s) {
      const std::string g = f + ".steps[" + std::to_string(s) + "]";
      if (!steps[s].is_array() || steps[s].size() != 3) bad(g, "expected [index, monomial, coeff]");
      alg::ReductionStep st;
      st.index = steps[s][0].get<std::size_t>();
      const alg::Polynomial m = r.parse(steps[s][1].get<std::string>());
      if (m.size() != 1 || m.lead().coeff != 1) bad(g, "expected a monomial");
      st.mono = m.lead().mono;
      st.coeff = io::rational_from_json(steps[s][2], g);
      d.steps.push_back(std::move(st));
    }
    t.derivations.push_back(std::move(d));
  }
  return t;
}

}  // namespace

PptCertificate ppt_certificate(const BipartiteState& s) {
  PptCertificate c;
  c.dims = s.dims();
  c.label = s.label();
  c.state = s.matrix();
  PsdVerdict v = psd_check(s.matrix());
  if (!v.psd) {
    c.failing = "state";
    c.witness = std::move(v.witness);
    c.witness_value = v.witness_value;
    return c;
  }
  c.ldl_state = std::move(v.factorization);
  PsdVerdict pt = psd_check(partial_transpose(s, Side::B));
  if (!pt.psd) {
    c.failing = "partial_transpose";
    c.witness = std::move(pt.witness);
    c.witness_value = pt.witness_value;
    return c;
  }
  c.ldl_partial_transpose = std::move(pt.factorization);
  c.ppt = true;
  return c;
}

VerifyResult verify(const PptCertificate& c) {
  if (c.state.rows() != c.dims.total() || !c.state.is_square()) return fail("state matrix has the wrong shape");
  if (!c.state.is_hermitian()) return fail("state matrix is not Hermitian");
  const ExactMatrix pt = partial_transpose(c.state, c.dims, Side::B);
  if (c.ppt) {
    if (!c.ldl_state || !c.ldl_partial_transpose) return fail("PPT claim without both factorizations");
    if (!verify_ldl(c.state, *c.ldl_state)) return fail("LDL factorization of the state does not replay");
    if (!verify_ldl(pt, *c.ldl_partial_transpose)) return fail("LDL factorization of the partial transpose does not replay");
    return {true, "PPT replayed"};
  }
  const ExactMatrix* m = nullptr;
  if (c.failing == "state") m = &c.state;
  else if (c.failing == "partial_transpose") m = &pt;
  else return fail("unknown failing matrix '" + c.failing + "'");
  if (c.witness.size() != m->rows()) return fail("witness has the wrong length");
  const GaussianRational value = inner(c.witness, (*m) * c.witness);
  if (!value.is_real() || value.re() != c.witness_value || sgn(value.re()) >= 0)
    return fail("negativity witness does not replay");
  return {true, "not PPT: <w|" + c.failing + "|w> = " + value.str() + " replayed"};
}

ExtremalityCertificate extremality_certificate(const BipartiteState& core, const ext::PipelineStep& step) {
  const ext::ExtensionBlocks b = ext::step_blocks(core, step);
  const ext::PsdExtremalityReport psd = ext::extremality_check_psd(b);
  const ext::PptExtremalityReport ppt = ext::extremality_check_ppt(b);
  return {core, step, psd.verdict, ppt.verdict, ppt.intersection_dim, ppt.trivial_range_intersection};
}

VerifyResult verify(const ExtremalityCertificate& c) {
  const ExtremalityCertificate r = extremality_certificate(c.core, c.step);
  if (r.psd != c.psd) return fail(std::string("PSD extremality recomputes to ") + ext::to_string(r.psd));
  if (r.ppt != c.ppt) return fail(std::string("PPT extremality recomputes to ") + ext::to_string(r.ppt));
  if (r.intersection_dim != c.intersection_dim) return fail("intersection dimension does not replay");
  if (r.trivial_range_intersection != c.trivial_range_intersection) return fail("range intersection flag does not replay");
  return {true, std::string("extremality replayed: PSD ") + ext::to_string(c.psd) + ", PPT " + ext::to_string(c.ppt)};
}

ProjectionCertificate projection_certificate(const BipartiteState& s, Side side, const ExactVector& phi) {
  return {s, side, phi, ext::sn_bounds_from_projection(s, side, phi)};
}

VerifyResult verify(const ProjectionCertificate& c) {
  const ext::ProjectionBound r = ext::sn_bounds_from_projection(c.state, c.side, c.phi);
  if (!(r.projected.matrix() == c.bound.projected.matrix())) return fail("projected state does not replay");
  if (r.projected_report.verdict != c.bound.projected_report.verdict) return fail("separability verdict does not replay");
  if (r.sn_upper != c.bound.sn_upper) return fail("SN bound does not replay");
  if (r.projected_report.rules_used != c.bound.projected_report.rules_used) return fail("rule list does not replay");
  return {true, c.bound.sn_upper ? "SN <= " + std::to_string(c.bound.sn_upper) + " replayed" : "no bound claimed"};
}

json to_json(const LdlFactorization& f) {
  json diag = json::array();
  for (const auto& d : f.diag) diag.push_back(d.get_str());
  return {{"perm", f.perm}, {"lower", to_json(f.lower)}, {"diag", diag}};
}

LdlFactorization ldl_from_json(const json& j, const std::string& field) {
  LdlFactorization f;
  f.perm = get<std::vector<std::size_t>>(j, "perm", field);
  f.lower = io::matrix_from_json(member(j, "lower", field), field + ".lower");
  const json& d = member(j, "diag", field);
  if (!d.is_array()) bad(field + ".diag", "expected an array");
  for (std::size_t i = 0; i < d.size(); ++i) f.diag.push_back(io::rational_from_json(d[i], field + ".diag"));
  return f;
}

json to_json(const PptCertificate& c) {
  json out = {{"type", "ppt"}, {"dims", dims_json(c.dims)}, {"label", c.label},
              {"state", to_json(c.state)}, {"ppt", c.ppt}};
  if (c.ldl_state) out["ldl_state"] = to_json(*c.ldl_state);
  if (c.ldl_partial_transpose) out["ldl_partial_transpose"] = to_json(*c.ldl_partial_transpose);
  if (!c.ppt) {
    out["failing"] = c.failing;
    out["witness"] = to_json(c.witness);
    out["witness_value"] = c.witness_value.get_str();
  }
  return out;
}

PptCertificate ppt_from_json(const json& j) {
  PptCertificate c;
  c.dims = dims_of(j);
  c.label = j.value("label", std::string{});
  c.state = io::matrix_from_json(member(j, "state"), "certificate.state");
  c.ppt = get<bool>(j, "ppt");
  if (j.contains("ldl_state")) c.ldl_state = ldl_from_json(j["ldl_state"], "certificate.ldl_state");
  if (j.contains("ldl_partial_transpose"))
    c.ldl_partial_transpose = ldl_from_json(j["ldl_partial_transpose"], "certificate.ldl_partial_transpose");
  if (!c.ppt) {
    c.failing = get<std::string>(j, "failing");
    c.witness = io::vector_from_json(member(j, "witness"), "certificate.witness");
    c.witness_value = io::rational_from_json(member(j, "witness_value"), "certificate.witness_value");
  }
  return c;
}

json to_json(const alg::SNCertificate& c) {
  json out = {{"dims", dims_json(c.dims)},
              {"label", c.label},
              {"status", alg::to_string(c.status)},
              {"value", c.value},
              {"trusted_rules", c.trusted_rules}};
  if (c.kind == alg::SNCertificate::Kind::Lower) {
    out["type"] = "sn_lower";
    if (!c.lower) return out;
    const alg::LowerEvidence& ev = *c.lower;
    const alg::PolyRing r(ev.variables);
    json basis = json::array();
    for (const auto& v : ev.basis) basis.push_back(to_json(v));
    out["order"] = "grevlex";
    out["variables"] = ev.variables;
    out["state"] = to_json(ev.state);
    out["witness"] = to_json(ev.witness);
    out["basis"] = basis;
    out["minor_size"] = ev.minor_size;
    out["excluded"] = ev.excluded;
    out["minor_count"] = ev.stats.total;
    out["generators"] = poly_list(ev.generators, r);
    out["groebner_basis"] = poly_list(ev.groebner_basis, r);
    out["target"] = r.str(ev.target);
    out["power"] = ev.power;
    if (ev.trace) out["trace"] = trace_json(*ev.trace, r);
  } else {
    out["type"] = "sn_upper";
    if (!c.upper) return out;
    out["state"] = to_json(c.upper->state);
    out["parts"] = io::to_json(c.upper->parts);
    out["schmidt_ranks"] = c.upper->schmidt_ranks;
  }
  return out;
}

alg::SNCertificate sn_from_json(const json& j) {
  alg::SNCertificate c;
  const std::string type = get<std::string>(j, "type");
  c.dims = dims_of(j);
  c.label = j.value("label", std::string{});
  const std::string status = get<std::string>(j, "status");
  if (status == "Certified") c.status = alg::CertStatus::Certified;
  else if (status == "Inconclusive") c.status = alg::CertStatus::Inconclusive;
  else bad("certificate.status", "unknown status '" + status + "'");
  c.value = get<std::size_t>(j, "value");
  if (j.contains("trusted_rules")) c.trusted_rules = get<std::vector<std::string>>(j, "trusted_rules");
  if (type == "sn_lower") {
    c.kind = alg::SNCertificate::Kind::Lower;
    if (j.contains("order") && j["order"] != "grevlex") bad("certificate.order", "only grevlex is supported");
    alg::LowerEvidence ev;
    ev.variables = get<std::vector<std::string>>(j, "variables");
    alg::PolyRing r;
    try {
      r = alg::PolyRing(ev.variables);
    } catch (const Error& e) {
      bad("certificate.variables", e.what());
    }
    ev.state = io::matrix_from_json(member(j, "state"), "certificate.state");
    ev.witness = io::vector_from_json(member(j, "witness"), "certificate.witness");
    const json& basis = member(j, "basis");
    if (!basis.is_array()) bad("certificate.basis", "expected an array");
    for (std::size_t i = 0; i < basis.size(); ++i)
      ev.basis.push_back(io::vector_from_json(basis[i], "certificate.basis[" + std::to_string(i) + "]"));
    ev.minor_size = get<std::size_t>(j, "minor_size");
    if (j.contains("excluded")) ev.excluded = get<std::vector<std::string>>(j, "excluded");
    ev.generators = poly_list_from(member(j, "generators"), r, "certificate.generators");
    ev.groebner_basis = poly_list_from(member(j, "groebner_basis"), r, "certificate.groebner_basis");
    ev.target = r.parse(get<std::string>(j, "target"));
    ev.power = get<unsigned>(j, "power");
    if (j.contains("trace")) ev.trace = trace_from(j["trace"], r);
    c.lower = std::move(ev);
  } else if (type == "sn_upper") {
    c.kind = alg::SNCertificate::Kind::Upper;
    alg::UpperEvidence ev;
    ev.state = io::matrix_from_json(member(j, "state"), "certificate.state");
    ev.parts = io::decomposition_from_json(member(j, "parts"), "certificate.parts");
    if (j.contains("schmidt_ranks")) ev.schmidt_ranks = get<std::vector<std::size_t>>(j, "schmidt_ranks");
    c.upper = std::move(ev);
  } else {
    bad("certificate.type", "expected sn_lower or sn_upper");
  }
  return c;
}

json to_json(const ExtremalityCertificate& c) {
  return {{"type", "extremality"},
          {"core", io::to_json(c.core)},
          {"step", io::to_json(c.step)},
          {"psd_extremality", ext::to_string(c.psd)},
          {"ppt_extremality", ext::to_string(c.ppt)},
          {"intersection_dim", c.intersection_dim},
          {"trivial_range_intersection", c.trivial_range_intersection}};
}

ExtremalityCertificate extremality_from_json(const json& j) {
  ExtremalityCertificate c{io::state_from_json(member(j, "core")), io::step_from_json(member(j, "step"))};
  c.psd = extremality_from(get<std::string>(j, "psd_extremality"), "certificate.psd_extremality");
  c.ppt = extremality_from(get<std::string>(j, "ppt_extremality"), "certificate.ppt_extremality");
  c.intersection_dim = get<std::size_t>(j, "intersection_dim");
  c.trivial_range_intersection = get<bool>(j, "trivial_range_intersection");
  return c;
}

json to_json(const ProjectionCertificate& c) {
  const alg::SeparabilityReport& rep = c.bound.projected_report;
  json blocks = json::array();
  for (const auto& b : rep.blocks)
    blocks.push_back({{"rows_a", b.rows_a}, {"rows_b", b.rows_b}, {"dims", dims_json(b.dims)}, {"ppt", b.ppt},
                      {"verdict", alg::to_string(b.verdict)}, {"rule", b.rule}});
  json trusted = json::array();
  for (const auto& r : rep.trusted_rules) trusted.push_back({{"rule", r}, {"statement", alg::trusted_statement(r)}});
  return {{"type", "projection"},
          {"state", io::to_json(c.state)},
          {"side", to_string(c.side)},
          {"phi", to_json(c.phi)},
          {"projected", to_json(c.bound.projected.matrix())},
          {"projected_verdict", alg::to_string(rep.verdict)},
          {"rule", rep.rule},
          {"rules_used", rep.rules_used},
          {"blocks", blocks},
          {"trusted_rules", trusted},
          {"sn_upper", c.bound.sn_upper},
          {"inequality", c.bound.inequality}};
}

ProjectionCertificate projection_from_json(const json& j) {
  const BipartiteState s = io::state_from_json(member(j, "state"));
  const Side side = io::side_from_json(member(j, "side"), "certificate.side");
  const ExactVector phi = io::vector_from_json(member(j, "phi"), "certificate.phi");
  // The claimed bound is rebuilt from the stored fields and compared on replay.
  ProjectionCertificate c = projection_certificate(s, side, phi);
  ExactMatrix projected = io::matrix_from_json(member(j, "projected"), "certificate.projected");
  if (!(projected == c.bound.projected.matrix())) {
    c.bound.projected = BipartiteState(c.bound.projected.dims(), std::move(projected), "claimed");
  }
  const std::string verdict = get<std::string>(j, "projected_verdict");
  for (auto v : {alg::SeparabilityVerdict::Separable, alg::SeparabilityVerdict::SchmidtAtMost2,
                 alg::SeparabilityVerdict::Unknown})
    if (verdict == alg::to_string(v)) c.bound.projected_report.verdict = v;
  c.bound.projected_report.rules_used = get<std::vector<std::string>>(j, "rules_used");
  c.bound.sn_upper = get<std::size_t>(j, "sn_upper");
  return c;
}

VerifyResult verify_json(const json& j) {
  const std::string type = get<std::string>(j, "type");
  if (type == "ppt") return verify(ppt_from_json(j));
  if (type == "sn_lower" || type == "sn_upper") return alg::verify_certificate(sn_from_json(j));
  if (type == "extremality") return verify(extremality_from_json(j));
  if (type == "projection") return verify(projection_from_json(j));
  if (type == "bundle") {
    const json& list = member(j, "certificates");
    if (!list.is_array()) bad("certificate.certificates", "expected an array");
    std::string msg;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const VerifyResult r = verify_json(list[i]);
      if (!r.ok) return fail("certificate " + std::to_string(i) + ": " + r.message);
      msg += (msg.empty() ? "" : "; ") + r.message;
    }
    return {true, msg};
  }
  bad("certificate.type", "unknown type '" + type + "'");
}

}  // namespace locext::cert
