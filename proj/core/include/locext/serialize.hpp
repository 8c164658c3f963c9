#pragma once

#include <string>

#include <json.hpp>

#include "locext/bipartite.hpp"
#include "locext/extension.hpp"
#include "locext/grid_graph.hpp"
#include "locext/polynomial.hpp"

namespace locext::io {

using nlohmann::json;

/// Scalars are strings "p/q" or "p/q+r/si"; integers are also accepted on
/// input. Parse failures throw Error(ParseError) naming the field.
json to_json(const GaussianRational& z);
GaussianRational scalar_from_json(const json& j, const std::string& field = "scalar");
json to_json(const mpq_class& q);
mpq_class rational_from_json(const json& j, const std::string& field = "rational");

json to_json(const ExactVector& v);
ExactVector vector_from_json(const json& j, const std::string& field = "vector");

/// {"rows", "cols", "entries": [[...], ...]}; a sparse form
/// {"rows", "cols", "nonzero": [[i, j, "v"], ...]} is accepted on input.
json to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const json& j, const std::string& field = "matrix");

json to_json(const Decomposition& d);
Decomposition decomposition_from_json(const json& j, const std::string& field = "decomposition");

/// {"type": "state", "dims": [m, n], "label", "matrix", "decomposition"?}
json to_json(const BipartiteState& s);
BipartiteState state_from_json(const json& j);

/// {"dims": [m, n], "solid": [{"sites": [[i, j], ...], "weight"}],
///  "dashed": [{"sites": [[i, j], [k, l]], "weight"}]}; dashed edges may
/// also be given as {"first", "second"}.
json to_json(const GridGraph& g);
GridGraph graph_from_json(const json& j);

/// {"kind": "slocc" | "product_pair" | "direct_sum" | "flat", "side": "A" | "B", ...}
json to_json(const ext::PipelineStep& s);
ext::PipelineStep step_from_json(const json& j);

json to_json(const alg::Polynomial& p, const alg::PolyRing& ring);
alg::Polynomial polynomial_from_json(const json& j, const alg::PolyRing& ring);

Side side_from_json(const json& j, const std::string& field = "side");

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace locext::io
