#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "locext/bipartite.hpp"
#include "locext/extension.hpp"
#include "locext/linalg.hpp"
#include "locext/projection_bound.hpp"
#include "locext/sn_certificate.hpp"

namespace locext::cert {

using nlohmann::json;
using alg::VerifyResult;

/// Exact PPT verdict. When PPT, both LDL factorizations are carried; when
/// not, a vector w with <w|M|w> < 0 for M = rho or rho^{T_B}.
struct PptCertificate {
  Dims dims;
  std::string label;
  ExactMatrix state;
  bool ppt = false;
  std::optional<LdlFactorization> ldl_state;
  std::optional<LdlFactorization> ldl_partial_transpose;
  std::string failing;  // "state" or "partial_transpose"
  ExactVector witness;
  mpq_class witness_value;
};

PptCertificate ppt_certificate(const BipartiteState& s);
VerifyResult verify(const PptCertificate& c);

/// Extremality verdicts for one pipeline step, replayed by recomputation.
struct ExtremalityCertificate {
  BipartiteState core;
  ext::PipelineStep step;
  ext::Extremality psd = ext::Extremality::NotCertified;
  ext::Extremality ppt = ext::Extremality::NotCertified;
  std::size_t intersection_dim = 0;
  bool trivial_range_intersection = false;
};

ExtremalityCertificate extremality_certificate(const BipartiteState& core, const ext::PipelineStep& step);
VerifyResult verify(const ExtremalityCertificate& c);

/// SN(s) <= SN(projected) + 1 with the projected state classified by rules.
struct ProjectionCertificate {
  BipartiteState state;
  Side side = Side::B;
  ExactVector phi;
  ext::ProjectionBound bound;
};

ProjectionCertificate projection_certificate(const BipartiteState& s, Side side, const ExactVector& phi);
VerifyResult verify(const ProjectionCertificate& c);

json to_json(const PptCertificate& c);
json to_json(const alg::SNCertificate& c);
json to_json(const ExtremalityCertificate& c);
json to_json(const ProjectionCertificate& c);
json to_json(const LdlFactorization& f);

PptCertificate ppt_from_json(const json& j);
alg::SNCertificate sn_from_json(const json& j);
ExtremalityCertificate extremality_from_json(const json& j);
ProjectionCertificate projection_from_json(const json& j);
LdlFactorization ldl_from_json(const json& j, const std::string& field);

/// Dispatches on "type": ppt, sn_lower, sn_upper, extremality, projection,
/// or a bundle {"type": "bundle", "certificates": [...]}. Malformed input
/// throws Error(ParseError); failed replays return ok = false.
VerifyResult verify_json(const json& j);

}  // namespace locext::cert
