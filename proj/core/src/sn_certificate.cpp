#include "locext/sn_certificate.hpp"

#include <algorithm>

#include "locext/errors.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"

namespace locext::alg {

const char* to_string(CertStatus s) { return s == CertStatus::Certified ? "Certified" : "Inconclusive"; }

namespace {

// The overlap must be c * x for one variable x; returns x.
Polynomial single_variable(const Polynomial& overlap) {
  if (overlap.size() != 1 || overlap.lead().mono.degree != 1)
    throw Error(ErrorKind::NonSingleVariableOverlap, "witness overlap is not a multiple of a single coordinate");
  return Polynomial::monomial(overlap.lead().mono, 1);
}

bool overlap_is_single_variable(const SymbolicRangeMatrix& m, const ExactVector& w) {
  const Polynomial o = m.overlap(w);
  return o.size() == 1 && o.lead().mono.degree == 1;
}

}  // namespace

SNCertificate certify_sn_lower(const BipartiteState& s, const SymbolicRangeMatrix& m, const ExactVector& witness,
                               std::size_t k, const LowerOptions& options) {
  if (witness.size() != s.dims().total()) throw Error(ErrorKind::DimensionMismatch, "witness has the wrong length");
  if (!(m.dims == s.dims())) throw Error(ErrorKind::DimensionMismatch, "coordinate matrix does not match the state");
  if (!range(s.matrix()).contains(witness))
    throw Error(ErrorKind::WitnessNotInRange, "witness is not in the range of " + s.label());
  const Polynomial target = single_variable(m.overlap(witness));

  SNCertificate c;
  c.kind = SNCertificate::Kind::Lower;
  c.dims = s.dims();
  c.label = s.label();
  LowerEvidence ev;
  ev.state = s.matrix();
  ev.witness = witness;
  ev.variables = m.ring.names();
  ev.basis = m.basis;
  ev.minor_size = k;
  ev.excluded = options.exclude_vars;
  MinorIdeal mi = minor_ideal(m, k, options.exclude_vars);
  ev.generators = std::move(mi.generators);
  ev.stats = mi;
  ev.target = target;

  GroebnerOptions go;
  go.record_trace = options.record_trace;
  go.progress = options.progress;
  GroebnerBasis gb = ev.generators.empty() ? GroebnerBasis{} : buchberger(ev.generators, go);
  ev.groebner_basis = std::move(gb.polys);
  ev.trace = std::move(gb.trace);

  const unsigned n_max = options.n_max ? options.n_max : static_cast<unsigned>(2 * k);
  c.status = CertStatus::Inconclusive;
  c.value = 1;
  Polynomial power(mpq_class(1));
  for (unsigned n = 1; n <= n_max; ++n) {
    power = power * target;
    if (normal_form(power, ev.groebner_basis).is_zero()) {
      ev.power = n;
      c.status = CertStatus::Certified;
      c.value = k;
      break;
    }
  }
  c.lower = std::move(ev);
  return c;
}

SNCertificate certify_sn_lower(const BipartiteState& s, const ExactVector& witness, std::size_t k,
                               const LowerOptions& options) {
  SymbolicRangeMatrix m = range_coordinate_matrix(s);
  if (!overlap_is_single_variable(m, witness) && s.decomposition()) {
    try {
      SymbolicRangeMatrix d = decomposition_coordinate_matrix(s);
      if (overlap_is_single_variable(d, witness)) m = std::move(d);
    } catch (const Error&) {
      // decomposition is not a range basis; keep the echelon basis
    }
  }
  return certify_sn_lower(s, m, witness, k, options);
}

SNCertificate sn_upper_from_decomposition(const Decomposition& parts, const BipartiteState& target) {
  const ExactMatrix sum = sum_of_projectors(parts, target.dims().total());
  if (!(sum == target.matrix()))
    throw Error(ErrorKind::DecompositionMismatch, "decomposition does not reproduce " + target.label());
  SNCertificate c;
  c.kind = SNCertificate::Kind::Upper;
  c.status = CertStatus::Certified;
  c.dims = target.dims();
  c.label = target.label();
  UpperEvidence ev;
  ev.state = target.matrix();
  ev.parts = parts;
  std::size_t mx = 0;
  for (const auto& p : parts) {
    const std::size_t sr = sgn(p.weight) == 0 ? 0 : schmidt_rank(p.vector, target.dims());
    ev.schmidt_ranks.push_back(sr);
    mx = std::max(mx, sr);
  }
  c.value = mx;
  c.upper = std::move(ev);
  return c;
}

namespace {

VerifyResult fail(std::string msg) { return {false, std::move(msg)}; }

VerifyResult verify_lower(const SNCertificate& c) {
  if (!c.lower) return fail("lower certificate without evidence");
  const LowerEvidence& ev = *c.lower;
  if (c.status == CertStatus::Inconclusive) return {true, "inconclusive certificate carries no claim"};
  if (ev.state.rows() != c.dims.total() || !ev.state.is_hermitian()) return fail("state matrix is malformed");
  const Subspace r = range(ev.state);
  if (ev.basis.size() != r.dim()) return fail("range basis has the wrong size");
  for (const auto& v : ev.basis)
    if (v.size() != c.dims.total() || !r.contains(v)) return fail("range basis vector outside R(rho)");
  SymbolicRangeMatrix m;
  try {
    m = range_coordinate_matrix(c.dims, ev.basis, ev.variables);
  } catch (const Error& e) {
    return fail(std::string("range basis rejected: ") + e.what());
  }
  if (!r.contains(ev.witness)) return fail("witness is not in R(rho)");
  Polynomial target;
  try {
    target = single_variable(m.overlap(ev.witness));
  } catch (const Error& e) {
    return fail(e.what());
  }
  if (target != ev.target) return fail("target does not match the witness overlap");
  const MinorIdeal mi = minor_ideal(m, ev.minor_size, ev.excluded);
  if (mi.generators != ev.generators) return fail("generators differ from the recomputed minors");
  if (c.value != ev.minor_size) return fail("certified value differs from the minor size");
  if (!ev.trace) return fail("no derivation trace; membership of the basis cannot be replayed");
  if (auto bad = replay_trace(ev.generators, *ev.trace)) return fail("trace item " + std::to_string(*bad) + " does not replay");
  for (std::size_t i = 0; i < ev.groebner_basis.size(); ++i)
    if (!normal_form(ev.groebner_basis[i], ev.trace->items).is_zero())
      return fail("reduction mismatch: basis element " + std::to_string(i) + " is not in the ideal");
  if (ev.power == 0) return fail("missing power");
  if (!normal_form(ev.target.pow(ev.power), ev.groebner_basis).is_zero())
    return fail("reduction mismatch: target^" + std::to_string(ev.power) + " does not reduce to zero");
  return {true, "SN >= " + std::to_string(c.value) + " replayed"};
}

VerifyResult verify_upper(const SNCertificate& c) {
  if (!c.upper) return fail("upper certificate without evidence");
  const UpperEvidence& ev = *c.upper;
  if (!(sum_of_projectors(ev.parts, c.dims.total()) == ev.state)) return fail("decomposition does not sum to the state");
  std::size_t mx = 0;
  for (std::size_t i = 0; i < ev.parts.size(); ++i) {
    if (sgn(ev.parts[i].weight) < 0) return fail("negative weight");
    const std::size_t sr = schmidt_rank(ev.parts[i].vector, c.dims);
    if (i < ev.schmidt_ranks.size() && ev.schmidt_ranks[i] != sr && sgn(ev.parts[i].weight) != 0)
      return fail("recorded Schmidt rank of " + ev.parts[i].name + " is wrong");
    if (sgn(ev.parts[i].weight) != 0) mx = std::max(mx, sr);
  }
  if (mx != c.value) return fail("maximal Schmidt rank differs from the certified value");
  return {true, "SN <= " + std::to_string(c.value) + " replayed"};
}

}  // namespace

VerifyResult verify_certificate(const SNCertificate& c) {
  try {
    return c.kind == SNCertificate::Kind::Lower ? verify_lower(c) : verify_upper(c);
  } catch (const Error& e) {
    return fail(e.what());
  }
}

CofactorIdentityReport cofactor_identity_check() {
  const SymbolicRangeMatrix m = range_coordinate_matrix(rho_4x5());
  CofactorIdentityReport out;
  out.ring = m.ring;
  const PolyRing& R = out.ring;
  for (const char* text : {"psi20*(psi00^2 - psi01*psi10)", "psi02*(psi00^2 + psi01*psi10)",
                           "psi20*(psi01^2 - psi00*psi02)", "-psi02*(psi10^2 + psi00*psi20)",
                           "psi00^3 + psi01^2*psi20 - psi10^2*psi02 - psi00*psi02*psi20"})
    out.g.push_back(R.parse(text));
  const MinorIdeal mi = minor_ideal(m, 3);
  for (const auto& g : out.g)
    out.g_are_minors.push_back(std::find(mi.generators.begin(), mi.generators.end(), g.monic()) !=
                               mi.generators.end());

  const Polynomial p00 = R.var("psi00"), p02 = R.var("psi02"), p20 = R.var("psi20");
  const auto& g = out.g;
  const Polynomial rhs = p00.pow(4);
  const Polynomial printed = p00 * (g[4] - g[2] - g[3]) - p02 * g[0] + p20 * g[1];
  out.printed_residue = printed - rhs;
  out.printed_holds = out.printed_residue.is_zero();
  const mpq_class half(1, 2);
  const Polynomial corrected = p00 * (g[4] - g[2] - g[3]) - p02 * g[0] * half - p20 * g[1] * half;
  out.corrected_holds = corrected == rhs;
  const Polynomial perturbed = p00 * (g[4] + g[2] + g[3]) - p02 * g[0] * half - p20 * g[1] * half;
  out.perturbed_holds = perturbed == rhs;
  return out;
}

EdgeStateReport edge_state_check(const BipartiteState& s,
                                 const std::vector<std::pair<ExactVector, ExactVector>>& candidates) {
  EdgeStateReport out;
  out.candidates = candidates.size();
  const Subspace r = range(s.matrix());
  const Subspace rpt = range(partial_transpose(s, Side::B));
  out.edge_state = true;
  for (const auto& [a, b] : candidates) {
    if (a.size() != s.dim_a() || b.size() != s.dim_b())
      throw Error(ErrorKind::DimensionMismatch, "candidate factors do not match the local dimensions");
    const bool in = r.contains(kron(a, b));
    const bool pc = rpt.contains(kron(a, conj(b)));
    out.in_range.push_back(in);
    out.partial_conjugate_in_range.push_back(pc);
    if (in && pc) out.edge_state = false;
  }
  return out;
}

std::vector<std::pair<ExactVector, ExactVector>> basis_product_candidates(const BipartiteState& s) {
  const Subspace r = range(s.matrix());
  std::vector<std::pair<ExactVector, ExactVector>> out;
  for (std::size_t i = 0; i < s.dim_a(); ++i)
    for (std::size_t j = 0; j < s.dim_b(); ++j)
      if (r.contains(basis_ket(s.dims(), i, j))) out.emplace_back(unit_vector(s.dim_a(), i), unit_vector(s.dim_b(), j));
  return out;
}

}  // namespace locext::alg
