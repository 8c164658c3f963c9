#include "locext/serialize.hpp"

#include <fstream>
#include <sstream>

#include "locext/errors.hpp"

namespace locext::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + why);
}

const json& member(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(field + "." + key, "missing");
  return *it;
}

std::size_t index_from_json(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(field, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

Dims dims_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(field, "expected [m, n]");
  return {index_from_json(j[0], field + "[0]"), index_from_json(j[1], field + "[1]")};
}

Site site_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(field, "expected [i, j]");
  return {index_from_json(j[0], field + "[0]"), index_from_json(j[1], field + "[1]")};
}

}  // namespace

json to_json(const GaussianRational& z) { return z.str(); }

GaussianRational scalar_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return GaussianRational(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) bad(field, "expected a scalar string");
  try {
    return GaussianRational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(field, e.what());
  }
}

json to_json(const mpq_class& q) { return q.get_str(); }

mpq_class rational_from_json(const json& j, const std::string& field) {
  const GaussianRational z = scalar_from_json(j, field);
  if (!z.is_real()) bad(field, "expected a real rational");
  return z.re();
}

json to_json(const ExactVector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

ExactVector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array");
  ExactVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(scalar_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

json to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

ExactMatrix matrix_from_json(const json& j, const std::string& field) {
  const std::size_t r = index_from_json(member(j, "rows", field), field + ".rows");
  const std::size_t c = index_from_json(member(j, "cols", field), field + ".cols");
  ExactMatrix m(r, c);
  if (j.contains("entries")) {
    const json& e = j["entries"];
    if (!e.is_array() || e.size() != r) bad(field + ".entries", "expected " + std::to_string(r) + " rows");
    for (std::size_t i = 0; i < r; ++i) {
      const std::string f = field + ".entries[" + std::to_string(i) + "]";
      const ExactVector row = vector_from_json(e[i], f);
      if (row.size() != c) bad(f, "expected " + std::to_string(c) + " entries");
      for (std::size_t k = 0; k < c; ++k)
        if (!row[k].is_zero()) m(i, k) = row[k];
    }
  } else if (j.contains("nonzero")) {
    const json& e = j["nonzero"];
    if (!e.is_array()) bad(field + ".nonzero", "expected an array");
    for (std::size_t n = 0; n < e.size(); ++n) {
      const std::string f = field + ".nonzero[" + std::to_string(n) + "]";
      if (!e[n].is_array() || e[n].size() != 3) bad(f, "expected [i, j, value]");
      const std::size_t i = index_from_json(e[n][0], f), k = index_from_json(e[n][1], f);
      if (i >= r || k >= c) bad(f, "index out of range");
      m(i, k) = scalar_from_json(e[n][2], f);
    }
  } else {
    bad(field, "needs 'entries' or 'nonzero'");
  }
  return m;
}

json to_json(const Decomposition& d) {
  json out = json::array();
  for (const auto& w : d) out.push_back({{"name", w.name}, {"weight", to_json(w.weight)}, {"vector", to_json(w.vector)}});
  return out;
}

Decomposition decomposition_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array");
  Decomposition d;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    WeightedVector w;
    w.weight = rational_from_json(member(j[i], "weight", f), f + ".weight");
    w.vector = vector_from_json(member(j[i], "vector", f), f + ".vector");
    if (j[i].contains("name")) w.name = j[i]["name"].get<std::string>();
    d.push_back(std::move(w));
  }
  return d;
}

json to_json(const BipartiteState& s) {
  json out = {{"type", "state"}, {"dims", {s.dim_a(), s.dim_b()}}, {"label", s.label()}, {"matrix", to_json(s.matrix())}};
  if (s.decomposition()) out["decomposition"] = to_json(*s.decomposition());
  return out;
}

BipartiteState state_from_json(const json& j) {
  const Dims d = dims_from_json(member(j, "dims", "state"), "state.dims");
  ExactMatrix m = matrix_from_json(member(j, "matrix", "state"), "state.matrix");
  std::optional<Decomposition> dec;
  if (j.contains("decomposition")) dec = decomposition_from_json(j["decomposition"], "state.decomposition");
  const std::string label = j.contains("label") ? j["label"].get<std::string>() : std::string{};
  return BipartiteState(d, std::move(m), label, std::move(dec));
}

json to_json(const GridGraph& g) {
  json solid = json::array(), dashed = json::array();
  for (const auto& e : g.solid) {
    json sites = json::array();
    for (const auto& [i, k] : e.sites) sites.push_back({i, k});
    solid.push_back({{"sites", sites}, {"weight", to_json(e.weight)}});
  }
  for (const auto& e : g.dashed)
    dashed.push_back({{"sites", {{e.first.first, e.first.second}, {e.second.first, e.second.second}}},
                      {"weight", to_json(e.weight)}});
  return {{"dims", {g.dims.a, g.dims.b}}, {"solid", solid}, {"dashed", dashed}};
}

GridGraph graph_from_json(const json& j) {
  GridGraph g;
  g.dims = dims_from_json(member(j, "dims", "graph"), "graph.dims");
  if (j.contains("solid")) {
    const json& s = j["solid"];
    if (!s.is_array()) bad("graph.solid", "expected an array");
    for (std::size_t n = 0; n < s.size(); ++n) {
      const std::string f = "graph.solid[" + std::to_string(n) + "]";
      SolidEdge e;
      const json& sites = member(s[n], "sites", f);
      if (!sites.is_array()) bad(f + ".sites", "expected an array");
      for (std::size_t k = 0; k < sites.size(); ++k)
        e.sites.push_back(site_from_json(sites[k], f + ".sites[" + std::to_string(k) + "]"));
      if (s[n].contains("weight")) e.weight = rational_from_json(s[n]["weight"], f + ".weight");
      g.solid.push_back(std::move(e));
    }
  }
  if (j.contains("dashed")) {
    const json& s = j["dashed"];
    if (!s.is_array()) bad("graph.dashed", "expected an array");
    for (std::size_t n = 0; n < s.size(); ++n) {
      const std::string f = "graph.dashed[" + std::to_string(n) + "]";
      DashedEdge e;
      if (s[n].contains("sites")) {
        const json& sites = s[n]["sites"];
        if (!sites.is_array() || sites.size() != 2) bad(f + ".sites", "a dashed edge joins exactly two sites");
        e.first = site_from_json(sites[0], f + ".sites[0]");
        e.second = site_from_json(sites[1], f + ".sites[1]");
      } else {
        e.first = site_from_json(member(s[n], "first", f), f + ".first");
        e.second = site_from_json(member(s[n], "second", f), f + ".second");
      }
      if (s[n].contains("weight")) e.weight = rational_from_json(s[n]["weight"], f + ".weight");
      g.dashed.push_back(e);
    }
  }
  g.validate();
  return g;
}

Side side_from_json(const json& j, const std::string& field) {
  if (j == "A") return Side::A;
  if (j == "B") return Side::B;
  bad(field, "expected \"A\" or \"B\"");
}

json to_json(const ext::PipelineStep& s) {
  using K = ext::PipelineStep::Kind;
  json out = {{"kind", ext::to_string(s.kind)}, {"side", to_string(s.side)}};
  switch (s.kind) {
    case K::Slocc: out["phi"] = to_json(s.phi); break;
    case K::ProductPair:
      out["alpha"] = to_json(s.alpha);
      out["beta"] = to_json(s.beta);
      out["gamma"] = to_json(s.gamma);
      break;
    case K::DirectSum: out["edge"] = to_json(s.edge); break;
    case K::Flat: out["chi"] = to_json(s.chi); break;
  }
  if (!s.note.empty()) out["note"] = s.note;
  return out;
}

ext::PipelineStep step_from_json(const json& j) {
  using K = ext::PipelineStep::Kind;
  ext::PipelineStep s;
  const json& kind = member(j, "kind", "step");
  if (kind == "slocc") s.kind = K::Slocc;
  else if (kind == "product_pair") s.kind = K::ProductPair;
  else if (kind == "direct_sum") s.kind = K::DirectSum;
  else if (kind == "flat") s.kind = K::Flat;
  else bad("step.kind", "unknown kind");
  s.side = side_from_json(member(j, "side", "step"), "step.side");
  switch (s.kind) {
    case K::Slocc: s.phi = vector_from_json(member(j, "phi", "step"), "step.phi"); break;
    case K::ProductPair:
      s.alpha = vector_from_json(member(j, "alpha", "step"), "step.alpha");
      s.beta = vector_from_json(member(j, "beta", "step"), "step.beta");
      s.gamma = vector_from_json(member(j, "gamma", "step"), "step.gamma");
      break;
    case K::DirectSum: s.edge = matrix_from_json(member(j, "edge", "step"), "step.edge"); break;
    case K::Flat: s.chi = matrix_from_json(member(j, "chi", "step"), "step.chi"); break;
  }
  if (j.contains("note")) s.note = j["note"].get<std::string>();
  return s;
}

json to_json(const alg::Polynomial& p, const alg::PolyRing& ring) { return ring.str(p); }

alg::Polynomial polynomial_from_json(const json& j, const alg::PolyRing& ring) {
  if (!j.is_string()) bad("polynomial", "expected a string");
  return ring.parse(j.get<std::string>());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << text;
}

}  // namespace locext::io
