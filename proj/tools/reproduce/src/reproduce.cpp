#include "locext/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "locext/errors.hpp"
#include "locext/extension.hpp"
#include "locext/families.hpp"
#include "locext/linalg.hpp"
#include "locext/numlab.hpp"
#include "locext/projection_bound.hpp"
#include "locext/range_matrix.hpp"
#include "locext/separability.hpp"
#include "locext/sn_certificate.hpp"
#include "locext/survey.hpp"

namespace locext::repro {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects sub-checks; the first failure is kept in the detail.
struct Checks {
  std::vector<std::string> notes;
  std::string first_failure;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
  void note(std::string s) { notes.push_back(std::move(s)); }

  std::string detail() const {
    std::string out = ok ? "" : "FAILED: " + first_failure + "; ";
    for (std::size_t i = 0; i < notes.size(); ++i) out += (i ? "; " : "") + notes[i];
    return out;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<std::string> delta_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= 2 * k - 2; ++i) out.push_back("d_" + std::to_string(i));
  return out;
}

struct Timeout {};

void criterion_rho3x3(Checks& c) {
  const BipartiteState r = rho_3x3();
  const PsdVerdict v = psd_check(r.matrix());
  const PsdVerdict vp = psd_check(partial_transpose(r, Side::B));
  c.expect(v.psd && v.factorization && verify_ldl(r.matrix(), *v.factorization), "rho is PSD with replayed LDL");
  c.expect(vp.psd && vp.factorization && verify_ldl(partial_transpose(r, Side::B), *vp.factorization),
           "rho^T_B is PSD with replayed LDL");
  const auto [p, q] = birank(r);
  c.expect(p == 5 && q == 6, "birank (5,6)");
  c.note("birank (" + std::to_string(p) + "," + std::to_string(q) + ")");

  const Decomposition f = rho_3x3_pt_decomposition();
  std::vector<mpq_class> w;
  for (const auto& x : f) w.push_back(x.weight);
  c.expect(w == std::vector<mpq_class>{1, 2, 1, 1, 1, 1}, "partial-transpose weights (1,2,1,1,1,1)");
  c.expect(sum_of_projectors(f, 9) == partial_transpose(r, Side::B), "sum r~_i |f_i><f_i| equals rho^T_B");

  const alg::SymbolicRangeMatrix m = alg::range_coordinate_matrix(r, true);
  const alg::MinorIdeal mi = alg::minor_ideal(m, 2);
  const alg::GroebnerBasis gb = alg::buchberger(mi.generators);
  const bool sq = gb.contains(m.ring.parse("psi00^2"));
  const bool cross = gb.contains(m.ring.parse("psi01*psi10"));
  c.expect(sq && cross, "psi00^2 and psi01*psi10 in the 2-minor ideal");
  c.note("2-minors " + std::to_string(mi.generators.size()) + ", GB " + std::to_string(gb.polys.size()) +
         ", psi00^2 and psi01*psi10 members");

  const alg::EdgeStateReport es =
      alg::edge_state_check(r, {{unit_vector(3, 0), unit_vector(3, 2)}, {unit_vector(3, 2), unit_vector(3, 0)}});
  c.expect(es.edge_state, "edge-state verdict on {|02>,|20>}");
  c.note(es.edge_state ? "edge state on {|02>,|20>}" : "not edge");
}

void criterion_rho4x5(Checks& c) {
  const Rho4x5Pipeline pl = rho_4x5_pipeline();
  c.expect(pl.steps.size() == 3, "three recorded steps");
  const BipartiteState& s = pl.final_state();
  c.expect(s.dims() == Dims{4, 5}, "final dims 4x5");
  c.expect(is_psd(s.matrix()) && is_ppt(s), "final state exactly PPT");

  const alg::SNCertificate lo = alg::certify_sn_lower(s, rho_4x5_witness(), 3);
  const bool lower_ok = lo.status == alg::CertStatus::Certified && lo.value == 3 && lo.lower && lo.lower->power == 4;
  c.expect(lower_ok, "lower certificate with N = 4");
  const alg::VerifyResult lv = alg::verify_certificate(lo);
  c.expect(lv.ok, "lower certificate replays: " + lv.message);
  if (lo.lower)
    c.note("lower SN >= " + std::to_string(lo.value) + " N=" + std::to_string(lo.lower->power) + " (" +
           std::to_string(lo.lower->generators.size()) + " minors, GB " +
           std::to_string(lo.lower->groebner_basis.size()) + ")");

  const alg::CofactorIdentityReport ci = alg::cofactor_identity_check();
  const bool minors = std::all_of(ci.g_are_minors.begin(), ci.g_are_minors.end(), [](bool b) { return b; });
  c.expect(minors, "g1..g5 are 3x3 minors");
  c.expect(ci.corrected_holds, "cofactor identity psi00(g5-g3-g4) - psi02 g1/2 - psi20 g2/2 = psi00^4");
  c.expect(!ci.perturbed_holds, "perturbed identity fails");
  c.note(std::string("cofactor identity holds with coefficients -1/2 on g1, g2") +
         (ci.printed_holds ? "" : "; unit coefficients leave residue " + ci.ring.str(ci.printed_residue)));

  const alg::SNCertificate up = alg::sn_upper_from_decomposition(*s.decomposition(), s);
  c.expect(up.value == 3 && alg::verify_certificate(up).ok, "upper certificate SN <= 3");
  c.expect(lower_ok && up.value == lo.value, "combined SN = 3");
  c.note("upper SN <= " + std::to_string(up.value) + "; SN = 3");
}

void criterion_projection(Checks& c) {
  const Rho4x5Pipeline pl = rho_4x5_pipeline();
  const BipartiteState& st = pl.stage2();
  c.expect(st.dims() == Dims{4, 4}, "stage-2 state is 4x4");
  const ext::ProjectionBound pb = ext::sn_bounds_from_projection(st, Side::B, unit_vector(st.dim_b(), 0));
  const alg::SeparabilityReport& rep = pb.projected_report;
  c.expect(rep.verdict == alg::SeparabilityVerdict::Separable && rep.rule == alg::kRuleR2, "Separable by R2");
  std::size_t r1 = 0, products = 0;
  std::string blocks;
  for (const auto& b : rep.blocks) {
    if (b.rule == alg::kRuleR1) {
      ++r1;
      c.expect(b.ppt && ((b.dims.a == 2 && b.dims.b == 3) || (b.dims.a == 3 && b.dims.b == 2)), "R1 block is 2x3 PPT");
    } else if (b.rule == alg::kRuleProduct) {
      ++products;
    } else {
      c.expect(false, "unexpected block rule " + b.rule);
    }
    blocks += (blocks.empty() ? "" : " + ") + std::to_string(b.dims.a) + "x" + std::to_string(b.dims.b);
  }
  c.expect(r1 == 1, "exactly one R1 block");
  c.expect(pb.sn_upper == 2, "SN <= 2");
  c.note("blocks " + blocks + " (" + std::to_string(r1) + " R1, " + std::to_string(products) + " product)");
  c.note(pb.inequality);
}

// Returns false when the k = 5 run hit its budget.
bool family_case(Checks& c, std::size_t k, double budget, double& elapsed) {
  const auto t0 = Clock::now();
  const FamilySpec spec{k, {}};
  const BipartiteState f = rho_family(spec);
  const std::string K = "k=" + std::to_string(k) + ": ";
  c.expect(is_psd(f.matrix()) && is_psd(partial_transpose(f, Side::A)) && is_ppt(f), K + "PPT");

  const Decomposition ptd = family_pt_decomposition(spec);
  c.expect(sum_of_projectors(ptd, f.dims().total()) == partial_transpose(f, Side::A), K + "T_A decomposition sums exactly");
  std::size_t max_sr = 0;
  for (const auto& w : ptd) max_sr = std::max(max_sr, schmidt_rank(w.vector, f.dims()));
  c.expect(max_sr <= 2, K + "T_A decomposition has SR <= 2");

  const auto sites = family_delta_sites(k);
  const ExactMatrix pt = partial_transpose(f, Side::A);
  const ExactMatrix dblock = pt.select(sites, sites);
  const ExactVector omega = family_omega(k);
  bool omega_ok = !is_zero(omega) && is_zero(dblock * omega);
  for (const auto& w : *f.decomposition()) {
    if (w.name.rfind("d_", 0) != 0) continue;
    ExactVector restricted;
    for (auto s : sites) restricted.push_back(w.vector[s]);
    if (inner(omega, restricted).is_zero()) omega_ok = false;
  }
  c.expect(omega_ok, K + "Omega spans a D-block kernel direction touching every delta_i");
  // Lowering any single d_i must break positivity of the partial transpose.
  const std::vector<mpq_class> d = spec.weights();
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<mpq_class> lowered = d;
    lowered[i] -= mpq_class(1, 2);
    const BipartiteState g = rho_family({k, lowered});
    c.expect(!is_psd(partial_transpose(g, Side::A)), K + "d_" + std::to_string(i + 1) + " is minimal");
  }

  const alg::SymbolicRangeMatrix m = alg::decomposition_coordinate_matrix(f, true);
  alg::LowerOptions lo;
  lo.exclude_vars = delta_names(k);
  if (budget > 0)
    lo.progress = [t0, budget](const alg::GroebnerProgress&) {
      if (since(t0) > budget) throw Timeout{};
    };
  alg::SNCertificate cert;
  try {
    cert = alg::certify_sn_lower(f, m, family_alpha(k), k, lo);
  } catch (const Timeout&) {
    elapsed = since(t0);
    return false;
  }
  const bool lower_ok = cert.status == alg::CertStatus::Certified && cert.lower && cert.lower->power == k;
  c.expect(lower_ok, K + "alpha^k in the minor ideal");
  c.expect(alg::verify_certificate(cert).ok, K + "lower certificate replays");
  const alg::SNCertificate up = alg::sn_upper_from_decomposition(*f.decomposition(), f);
  c.expect(up.value == k, K + "upper certificate SN <= k");
  elapsed = since(t0);
  c.note(K + "N=" + std::to_string(cert.lower ? cert.lower->power : 0) + ", " +
         std::to_string(cert.lower ? cert.lower->generators.size() : 0) + "/" +
         std::to_string(cert.lower ? cert.lower->stats.total : 0) + " minors, GB " +
         std::to_string(cert.lower ? cert.lower->groebner_basis.size() : 0) + ", SN=" + std::to_string(k) + " (" +
         fmt("%.2f s", elapsed) + ")");
  return true;
}

void criterion_family(Checks& c, const ReproduceOptions& opt) {
  const double budgets[] = {0, 0, 10, 10, 600};
  for (std::size_t k = 2; k <= 4; ++k) {
    double t = 0;
    family_case(c, k, 0, t);
    c.expect(t < budgets[k], "k=" + std::to_string(k) + " within " + fmt("%.0f s", budgets[k]));
  }
  if (!opt.long_jobs) {
    c.note("k=5 not run (opt-in long job)");
    return;
  }
  double t = 0;
  if (!family_case(c, 5, opt.long_budget, t))
    c.note("k=5 not desk-scale: Buchberger stopped after " + fmt("%.0f s", t) + " without finishing");
}

void criterion_tiles(Checks& c) {
  const TilesComplement t = tiles_complement();
  const auto [p, q] = birank(t.state);
  c.expect(p == 4 && q == 4, "birank (4,4)");
  c.expect(is_ppt(t.state), "PPT");
  c.expect(t.product_vectors.size() == 5, "five product vectors");
  for (const auto& [a, b] : t.product_vectors)
    c.expect(is_zero(t.state.matrix() * kron(a, b)), "product vector in the kernel by substitution");
  c.expect(is_zero(partial_transpose(t.state, Side::B) * kron(t.product_vectors[0].first, conj(t.product_vectors[0].second))),
           "partial conjugate in the kernel of the partial transpose");
  const ext::ExtensionSpace sp = ext::ppt_extension_space(t.state);
  c.expect(sp.dimension == 3, "extension space has dimension 3");
  c.expect(sp.trivial_dimension == sp.dimension, "only SLOCC extensions");
  c.note("dimension " + std::to_string(sp.dimension) + ", SLOCC " + std::to_string(sp.trivial_dimension) + ", bound " +
         std::to_string(sp.bound));
}

void criterion_bound(Checks& c) {
  const Rho4x5Pipeline pl = rho_4x5_pipeline();
  std::vector<BipartiteState> corpus = {pl.stages[0], pl.stages[1], pl.stages[2], pl.stages[3],
                                        tiles_complement().state, qubit_counterexample(),
                                        rho_family({2, {}}), maximally_mixed({2, 2}), maximally_mixed({2, 3})};
  std::string dims;
  for (const auto& s : corpus) {
    const ext::ExtensionSpace sp = ext::ppt_extension_space(s);
    const std::size_t m = s.dim_a();
    const bool ok = sp.dimension >= m && (sp.bound <= 0 || sp.dimension >= static_cast<std::size_t>(sp.bound) + m);
    c.expect(ok, s.label() + ": dimension " + std::to_string(sp.dimension) + " vs bound " + std::to_string(sp.bound));
    dims += (dims.empty() ? "" : " ") + s.label() + ":" + std::to_string(sp.dimension) + "/" + std::to_string(sp.bound);
  }
  c.note("dimension/bound " + dims);

  const ext::ExtensionSpace sp = ext::ppt_extension_space(pl.core());
  c.expect(sp.bound == 3, "rho3x3 bound = 3");
  c.expect(sp.dimension > sp.trivial_dimension, "rho3x3 has nontrivial extensions");
  for (std::size_t i = 0; i < pl.steps.size(); ++i) {
    const auto& step = pl.steps[i];
    const ext::ExtensionSpace si = ext::ppt_extension_space(pl.stages[i], step.side);
    const ext::ExtensionBlocks b = ext::step_blocks(pl.stages[i], step);
    c.expect(si.contains(b.coupling), "pipeline step " + std::to_string(i + 1) + " solves the linear constraints");
  }
  c.note("rho3x3 bound " + std::to_string(sp.bound) + ", dimension " + std::to_string(sp.dimension) +
         " (SLOCC " + std::to_string(sp.trivial_dimension) + "); all pipeline couplings are solutions");
}

void criterion_lift(Checks& c, const ReproduceOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  std::size_t failures = 0, max_inc = 0;
  for (std::size_t n = 0; n < opt.random_cases; ++n) {
    const LiftCase lc = random_lift_case(rng);
    const ext::LiftResult r = ext::lift_decomposition(lc.extended, lc.side, lc.perp_index, lc.core_vectors);
    const Decomposition full = ext::complete_decomposition(r, lc.extended.dims(), lc.side, lc.perp_index);
    const bool ok = sum_of_projectors(full, lc.extended.dims().total()) == lc.extended.matrix() && r.max_increment() <= 1;
    if (!ok) ++failures;
    max_inc = std::max(max_inc, r.max_increment());
  }
  c.expect(failures == 0, std::to_string(failures) + " lift cases failed");
  c.note(std::to_string(opt.random_cases) + " cases, " + std::to_string(failures) + " failures, max SR increment " +
         std::to_string(max_inc));
}

void criterion_survey(Checks& c, const ReproduceOptions& opt) {
  num::SurveyOptions so;
  so.samples = opt.survey_samples;
  so.seed = opt.seed;
  const auto reps = num::unextendibility_survey({{{3, 3}, 4, 4}}, so);
  const num::SurveyReport& r = reps.at(0);
  const std::size_t need = (opt.survey_samples * 9 + 9) / 10;
  c.expect(r.converged >= need, std::to_string(r.converged) + " of " + std::to_string(r.samples) + " converged");
  c.expect(r.residual_max < 1e-9, "converged residuals below 1e-9");
  std::size_t dim3 = r.extension_histogram.count(3) ? r.extension_histogram.at(3) : 0;
  c.expect(dim3 == r.converged, "every converged sample has extension dimension 3");
  c.note(std::to_string(r.converged) + "/" + std::to_string(r.samples) + " converged, dimension 3 in " +
         std::to_string(dim3) + ", max residual " + fmt("%.2e", r.residual_max));

  for (const BipartiteState& s : {rho_3x3(), rho_family({2, {}})}) {
    const std::size_t exact = ext::ppt_extension_space(s).dimension;
    const std::size_t numeric = num::numeric_extension_dimension(num::to_float(s));
    c.expect(exact == numeric, s.label() + ": numeric " + std::to_string(numeric) + " vs exact " + std::to_string(exact));
    c.note(s.label() + " numeric = exact = " + std::to_string(exact));
  }
}

void criterion_peel(Checks& c, const ReproduceOptions& opt) {
  std::mt19937_64 rng(opt.seed + 1000);
  std::size_t failures = 0;
  for (std::size_t n = 0; n < opt.random_cases; ++n) {
    const PeelCase pc = random_peel_case(rng);
    const ext::PeelResult r = ext::witness_schur_peel(pc.w, pc.dims, pc.side, pc.perp_index);
    if (!(r.embedded + r.psd_part == pc.w) || !r.psd_part_is_psd) ++failures;
  }
  c.expect(failures == 0, std::to_string(failures) + " peel cases failed");
  c.note(std::to_string(opt.random_cases) + " cases, " + std::to_string(failures) + " failures");
}

struct Spec {
  const char* name;
  double budget;
};

constexpr Spec kSpecs[kCriteria + 1] = {
    {"", 0},
    {"rho3x3 regression", 1},
    {"4x5 pipeline and SN = 3", 10},
    {"projected stage-2 state is separable", 1},
    {"family certificates", 0},
    {"Tiles complement extension space", 5},
    {"extension count bound on the corpus", 5},
    {"randomized decomposition lifting", 0},
    {"random birank-(4,4) survey", 120},
    {"witness Schur peel identity", 0},
};

}  // namespace

CriterionResult run_criterion(int id, const ReproduceOptions& opt) {
  if (id < 1 || id > kCriteria) throw Error(ErrorKind::BoundsViolation, "criterion id " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = kSpecs[id].name;
  r.budget = kSpecs[id].budget;
  Checks c;
  const auto t0 = Clock::now();
  try {
    switch (id) {
      case 1: criterion_rho3x3(c); break;
      case 2: criterion_rho4x5(c); break;
      case 3: criterion_projection(c); break;
      case 4: criterion_family(c, opt); break;
      case 5: criterion_tiles(c); break;
      case 6: criterion_bound(c); break;
      case 7: criterion_lift(c, opt); break;
      case 8: criterion_survey(c, opt); break;
      case 9: criterion_peel(c, opt); break;
    }
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = since(t0);
  if (r.budget > 0) c.expect(r.seconds < r.budget, "runtime " + fmt("%.2f s", r.seconds) + " over budget");
  r.passed = c.ok;
  r.detail = c.detail();
  return r;
}

std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const ReproduceOptions& opt) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriteria; ++i) todo.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : todo) {
    out.push_back(run_criterion(id, opt));
    if (opt.on_result) opt.on_result(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name << " (" << fmt("%.2f s", r.seconds);
  if (r.budget > 0) os << " / budget " << fmt("%.0f s", r.budget);
  os << ") " << r.detail;
  return os.str();
}

nlohmann::json manifest(const std::vector<CriterionResult>& results, const ReproduceOptions& opt) {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                    {"budget_seconds", r.budget}, {"detail", r.detail}});
  }
  return {{"type", "reproduce"},
          {"seed", opt.seed},
          {"survey_samples", opt.survey_samples},
          {"random_cases", opt.random_cases},
          {"long_jobs", opt.long_jobs},
          {"all_passed", all},
          {"criteria", list}};
}

ExactVector random_vector(std::mt19937_64& rng, std::size_t n, long range, double density, bool complex) {
  std::uniform_int_distribution<long> val(-range, range);
  std::bernoulli_distribution keep(density);
  ExactVector v(n);
  for (;;) {
    for (auto& z : v) {
      z = 0;
      if (!keep(rng)) continue;
      z = complex ? GaussianRational(mpq_class(val(rng)), mpq_class(val(rng))) : GaussianRational(val(rng));
    }
    if (!is_zero(v)) return v;
  }
}

Decomposition random_decomposition(std::mt19937_64& rng, std::size_t dim, std::size_t count, bool complex) {
  std::uniform_int_distribution<long> weight(1, 3);
  Decomposition d;
  for (std::size_t i = 0; i < count; ++i)
    d.push_back({mpq_class(weight(rng)), random_vector(rng, dim, 2, 0.6, complex), "v" + std::to_string(i)});
  return d;
}

ExactMatrix random_hermitian_exact(std::mt19937_64& rng, std::size_t n, long range) {
  std::uniform_int_distribution<long> val(-range, range);
  ExactMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = GaussianRational(val(rng));
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = GaussianRational(mpq_class(val(rng)), mpq_class(val(rng)));
      h(j, i) = h(i, j).conj();
    }
  }
  return h;
}

LiftCase random_lift_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 3);
  const Dims d{dim(rng), dim(rng)};
  const Side side = std::bernoulli_distribution(0.5)(rng) ? Side::A : Side::B;
  const std::size_t perp = std::uniform_int_distribution<std::size_t>(0, d.on(side) - 1)(rng);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(1, d.total())(rng);
  Decomposition full = random_decomposition(rng, d.total(), count);
  BipartiteState s(d, sum_of_projectors(full, d.total()), "lift");
  const auto cs = ext::core_sites(d, side, perp);
  Decomposition core;
  for (const auto& w : full) {
    ExactVector v;
    for (auto i : cs) v.push_back(w.vector[i]);
    if (!is_zero(v)) core.push_back({w.weight, std::move(v), w.name});
  }
  return {std::move(s), side, perp, std::move(core)};
}

PeelCase random_peel_case(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> dim(2, 3);
  const Dims d{dim(rng), dim(rng)};
  const Side side = std::bernoulli_distribution(0.5)(rng) ? Side::A : Side::B;
  const std::size_t perp = std::uniform_int_distribution<std::size_t>(0, d.on(side) - 1)(rng);
  const std::size_t count = std::uniform_int_distribution<std::size_t>(1, d.total())(rng);
  ExactMatrix w = sum_of_projectors(random_decomposition(rng, d.total(), count), d.total());
  const auto cs = ext::core_sites(d, side, perp);
  const ExactMatrix h = random_hermitian_exact(rng, cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) w(cs[i], cs[j]) += h(i, j);
  return {std::move(w), d, side, perp};
}

}  // namespace locext::repro
