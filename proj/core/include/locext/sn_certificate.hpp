#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locext/bipartite.hpp"
#include "locext/groebner.hpp"
#include "locext/range_matrix.hpp"

namespace locext::alg {

enum class CertStatus { Certified, Inconclusive };
const char* to_string(CertStatus s);

/// Evidence that every Schmidt-rank <= k-1 vector of R(rho) is orthogonal
/// to the witness: target^power lies in the ideal of k x k minors.
struct LowerEvidence {
  ExactMatrix state;
  ExactVector witness;
  std::vector<std::string> variables;  // ring order, also the grevlex order
  std::vector<ExactVector> basis;      // range basis, one per variable
  std::size_t minor_size = 0;
  std::vector<std::string> excluded;
  std::vector<Polynomial> generators;
  std::vector<Polynomial> groebner_basis;
  std::optional<GroebnerTrace> trace;
  Polynomial target;
  unsigned power = 0;
  MinorIdeal stats;  // counts only; generators duplicated above
};

/// Evidence sum_i w_i |v_i><v_i| = rho with every SR(v_i) <= value.
struct UpperEvidence {
  ExactMatrix state;
  Decomposition parts;
  std::vector<std::size_t> schmidt_ranks;
};

struct SNCertificate {
  enum class Kind { Lower, Upper };
  Kind kind = Kind::Lower;
  CertStatus status = CertStatus::Inconclusive;
  std::size_t value = 0;  // SN >= value (lower) or SN <= value (upper)
  Dims dims;
  std::string label;
  std::optional<LowerEvidence> lower;
  std::optional<UpperEvidence> upper;
  std::vector<std::string> trusted_rules;
};

struct LowerOptions {
  unsigned n_max = 0;  // 0 selects 2k
  std::vector<std::string> exclude_vars;
  bool record_trace = true;
  std::function<void(const GroebnerProgress&)> progress;
};

/// Builds the k-minor ideal of the coordinate matrix and searches the
/// smallest N <= n_max with target^N in it, target being the single
/// variable carried by the witness overlap.
/// Throws WitnessNotInRange and NonSingleVariableOverlap.
SNCertificate certify_sn_lower(const BipartiteState& s, const SymbolicRangeMatrix& m, const ExactVector& witness,
                               std::size_t k, const LowerOptions& options = {});
/// Picks the decomposition basis when it is a range basis with the witness
/// among its elements, the echelon basis otherwise.
SNCertificate certify_sn_lower(const BipartiteState& s, const ExactVector& witness, std::size_t k,
                               const LowerOptions& options = {});

/// Throws DecompositionMismatch unless the parts reproduce the target.
SNCertificate sn_upper_from_decomposition(const Decomposition& parts, const BipartiteState& target);

struct VerifyResult {
  bool ok = false;
  std::string message;
};

/// Replays a certificate without running Buchberger. Lower certificates:
/// the basis spans R(rho), the minors match the generators, the trace
/// reproduces every item, each basis element reduces to zero modulo the
/// items and target^N reduces to zero modulo the basis.
VerifyResult verify_certificate(const SNCertificate& c);

/// The cofactor identity for the 4x5 minors.
struct CofactorIdentityReport {
  PolyRing ring;
  std::vector<Polynomial> g;             // g1..g5
  std::vector<bool> g_are_minors;        // each g_i is a 3x3 minor of Psi up to sign
  bool printed_holds = false;            // psi00 (g5-g3-g4) - psi02 g1 + psi20 g2
  Polynomial printed_residue;            // lhs - psi00^4 of the printed form
  bool corrected_holds = false;          // psi00 (g5-g3-g4) - psi02 g1 / 2 - psi20 g2 / 2
  bool perturbed_holds = false;          // corrected form with g3 and g4 sign-swapped
};

CofactorIdentityReport cofactor_identity_check();

/// Edge-state test restricted to the supplied candidate product vectors
/// |a>|b>. A candidate passes when |ab> is in R(s) and |a b*> in R(s^{T_B}).
struct EdgeStateReport {
  bool edge_state = false;                  // no candidate passes
  std::vector<bool> in_range;
  std::vector<bool> partial_conjugate_in_range;
  std::size_t candidates = 0;
  std::string scope = "restricted to supplied candidates";
};

EdgeStateReport edge_state_check(const BipartiteState& s,
                                 const std::vector<std::pair<ExactVector, ExactVector>>& candidates);

/// Computational-basis product vectors |ij> in R(s).
std::vector<std::pair<ExactVector, ExactVector>> basis_product_candidates(const BipartiteState& s);

}  // namespace locext::alg
