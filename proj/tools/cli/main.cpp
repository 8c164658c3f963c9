#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "locext/certificate.hpp"
#include "locext/errors.hpp"
#include "locext/families.hpp"
#include "locext/grid_graph.hpp"
#include "locext/numlab.hpp"
#include "locext/reproduce.hpp"
#include "locext/serialize.hpp"
#include "locext/sn_certificate.hpp"
#include "locext/survey.hpp"

using namespace locext;
using nlohmann::json;

namespace {

constexpr int kVerdict = 0;
constexpr int kInconclusive = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  bool json_out = false;
  std::string out;
};

void add_common(CLI::App* app, Common& c) {
  app->add_flag("--json", c.json_out, "Print the JSON report to stdout");
  app->add_option("--out", c.out, "Write the JSON report to this path");
}

// Text goes to stdout unless --json was given; JSON goes to --out and/or stdout.
void emit(const Common& c, const json& j, const std::string& text) {
  if (!c.out.empty()) io::write_text_file(c.out, j.dump(2) + "\n");
  if (c.json_out) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string read_stdin() {
  if (isatty(STDIN_FILENO)) throw InputError("--state: no state given and stdin is a terminal");
  return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
}

json parse_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(what + ": not valid JSON (" + e.what() + ")");
  }
}

std::size_t family_k(const std::string& s, const std::string& field) {
  try {
    std::size_t pos = 0;
    const long k = std::stol(s, &pos);
    if (pos != s.size() || k < 2) throw std::invalid_argument("k");
    return static_cast<std::size_t>(k);
  } catch (const std::exception&) {
    throw InputError(field + ": expected an integer k >= 2, got '" + s + "'");
  }
}

std::optional<BipartiteState> named_state(const std::string& name) {
  if (name == "rho3x3") return rho_3x3();
  if (name == "rho4x5") return rho_4x5();
  if (name == "stage1") return rho_4x5_pipeline().stage1();
  if (name == "stage2") return rho_4x5_pipeline().stage2();
  if (name == "tiles") return tiles_complement().state;
  if (name == "qubit") return qubit_counterexample();
  if (name.rfind("family:", 0) == 0) return rho_family({family_k(name.substr(7), "--state"), {}});
  return std::nullopt;
}

// --state accepts a built-in name, a state file, or "-" / nothing for stdin.
BipartiteState load_state(const std::string& arg) {
  if (!arg.empty() && arg != "-")
    if (auto s = named_state(arg)) return *s;
  json j;
  if (arg.empty() || arg == "-") j = parse_text(read_stdin(), "--state (stdin)");
  else {
    std::ifstream in(arg);
    if (!in) throw InputError("--state: '" + arg + "' is neither a known state name nor a readable file");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    j = parse_text(text, "--state");
  }
  if (j.is_object() && j.value("type", "") == "ppt") {
    // A PPT certificate embeds the state it speaks about.
    return BipartiteState({j["dims"][0].get<std::size_t>(), j["dims"][1].get<std::size_t>()},
                          io::matrix_from_json(j["state"], "state"), j.value("label", ""));
  }
  return io::state_from_json(j);
}

json load_json_arg(const std::string& arg, const std::string& field) {
  if (arg.empty()) throw InputError(field + ": missing");
  std::ifstream in(arg);
  if (in) {
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_text(text, field);
  }
  return parse_text(arg, field);
}

std::string summary(const BipartiteState& s) {
  const auto [p, q] = birank(s);
  std::ostringstream os;
  os << s.label() << ": " << s.dim_a() << "x" << s.dim_b() << ", birank (" << p << "," << q << "), trace "
     << s.matrix().trace().str() << "\n";
  return os.str();
}

// ---------------------------------------------------------------- verbs

int run_build(const Common& c, const std::string& family, const std::string& state, const std::string& graph,
              bool normalize) {
  int given = !family.empty() + !state.empty() + !graph.empty();
  if (given != 1) throw InputError("build: give exactly one of --family, --state, --graph");
  std::optional<BipartiteState> s;
  if (!family.empty()) s = rho_family({family_k(family, "--family"), {}});
  else if (!graph.empty()) s = grid_to_state(io::graph_from_json(load_json_arg(graph, "--graph")), "grid");
  else {
    s = named_state(state);
    if (!s) throw InputError("--state: unknown state name '" + state + "'");
  }
  json j = io::to_json(*s);
  if (normalize) j["display_trace_normalized"] = io::to_json(trace_normalized(s->matrix()));
  if (!c.out.empty()) {
    io::write_text_file(c.out, j.dump(2) + "\n");
    if (!c.json_out) std::cout << summary(*s);
  }
  if (c.out.empty() || c.json_out) std::cout << j.dump(2) << "\n";
  return kVerdict;
}

int run_ppt_check(const Common& c, const std::string& state) {
  const BipartiteState s = load_state(state);
  const cert::PptCertificate pc = cert::ppt_certificate(s);
  std::ostringstream os;
  os << summary(s);
  if (pc.ppt) os << "PPT: yes (exact LDL factorizations of rho and rho^T_B)\n";
  else os << "PPT: no (<w|" << pc.failing << "|w> = " << pc.witness_value.get_str() << ")\n";
  emit(c, cert::to_json(pc), os.str());
  return kVerdict;
}

int run_extend(const Common& c, const std::string& state, const std::string& step_arg) {
  BipartiteState s = load_state(state);
  const json steps = load_json_arg(step_arg, "--step");
  std::vector<ext::PipelineStep> list;
  if (steps.is_array())
    for (const auto& j : steps) list.push_back(io::step_from_json(j));
  else
    list.push_back(io::step_from_json(steps));
  const std::vector<BipartiteState> stages = run_pipeline(s, list);
  const BipartiteState& out = stages.back();
  json j = io::to_json(out);
  j["pipeline"] = json::array();
  for (const auto& st : list) j["pipeline"].push_back(io::to_json(st));
  std::ostringstream os;
  for (const auto& st : stages) os << summary(st);
  if (c.out.empty() && !c.json_out) {
    std::cout << j.dump(2) << "\n";
    return kVerdict;
  }
  emit(c, j, os.str());
  return kVerdict;
}

std::pair<Side, std::size_t> parse_projection(const std::string& text) {
  unsigned idx = 0;
  char side = 0, tail = 0;
  if (std::sscanf(text.c_str(), "%c:%u%c", &side, &idx, &tail) != 2 || (side != 'A' && side != 'B'))
    throw InputError("--project: expected A:i or B:i, got '" + text + "'");
  return {side == 'A' ? Side::A : Side::B, idx};
}

int run_certify(const Common& c, const std::string& state, std::size_t k, unsigned nmax, const std::string& witness_arg,
                const std::vector<std::string>& exclude, bool progress, const std::string& project) {
  if (k < 2) throw InputError("--k: must be at least 2");
  const BipartiteState s = load_state(state);
  alg::LowerOptions lo;
  lo.n_max = nmax;
  lo.exclude_vars = exclude;
  if (progress)
    lo.progress = [](const alg::GroebnerProgress& p) {
      std::fprintf(stderr, "  pairs %zu pending %zu basis %zu degree %u\n", p.pairs_done, p.pairs_pending, p.basis_size,
                   p.degree);
    };

  std::optional<alg::SNCertificate> lower;
  const bool family = state.rfind("family:", 0) == 0;
  if (family) {
    const std::size_t fk = family_k(state.substr(7), "--state");
    if (exclude.empty())
      for (std::size_t i = 1; i <= 2 * fk - 2; ++i) lo.exclude_vars.push_back("d_" + std::to_string(i));
    const ExactVector w = witness_arg.empty() ? family_alpha(fk) : io::vector_from_json(load_json_arg(witness_arg, "--witness"), "--witness");
    lower = alg::certify_sn_lower(s, alg::decomposition_coordinate_matrix(s, true), w, k, lo);
  } else {
    ExactVector w;
    if (!witness_arg.empty()) w = io::vector_from_json(load_json_arg(witness_arg, "--witness"), "--witness");
    else if (state == "rho4x5") w = rho_4x5_witness();
    if (!w.empty()) lower = alg::certify_sn_lower(s, w, k, lo);
  }

  json bundle = {{"type", "bundle"}, {"certificates", json::array()}};
  std::ostringstream os;
  os << summary(s);
  const bool certified = lower && lower->status == alg::CertStatus::Certified;
  if (!lower)
    os << "lower: skipped (no --witness for this state)\n";
  else if (certified)
    os << "lower: SN >= " << lower->value << " (N = " << lower->lower->power << ", " << lower->lower->generators.size()
       << " minors, Groebner basis " << lower->lower->groebner_basis.size() << ")\n";
  else
    os << "lower: inconclusive up to N = " << (nmax ? nmax : 2 * k) << "\n";
  if (lower) bundle["certificates"].push_back(cert::to_json(*lower));
  std::optional<alg::SNCertificate> upper;
  if (s.decomposition()) {
    upper = alg::sn_upper_from_decomposition(*s.decomposition(), s);
    bundle["certificates"].push_back(cert::to_json(*upper));
    os << "upper: SN <= " << upper->value << " (" << s.decomposition()->size() << " vectors)\n";
  } else {
    os << "upper: no decomposition attached\n";
  }
  std::size_t best_upper = upper ? upper->value : 0;
  if (!project.empty()) {
    const auto [side, idx] = parse_projection(project);
    if (idx >= s.dims().on(side)) throw InputError("--project: index outside the local dimension");
    const cert::ProjectionCertificate pc = cert::projection_certificate(s, side, unit_vector(s.dims().on(side), idx));
    bundle["certificates"].push_back(cert::to_json(pc));
    os << "projection on " << to_string(side) << " removing |" << idx << ">: projected state "
       << alg::to_string(pc.bound.projected_report.verdict);
    if (!pc.bound.projected_report.rule.empty()) os << " (" << pc.bound.projected_report.rule << ")";
    os << "; " << pc.bound.inequality << "\n";
    if (pc.bound.sn_upper && (!best_upper || pc.bound.sn_upper < best_upper)) best_upper = pc.bound.sn_upper;
  }
  if (certified && best_upper == lower->value) os << "SN = " << lower->value << "\n";
  bundle["summary"] = {{"lower", certified ? json(lower->value) : json(nullptr)},
                       {"upper", best_upper ? json(best_upper) : json(nullptr)}};
  emit(c, bundle, os.str());
  if (lower) return certified ? kVerdict : kInconclusive;
  return best_upper ? kVerdict : kInconclusive;
}

int run_extremal(const Common& c, const std::string& state, const std::string& step_arg) {
  std::vector<std::pair<BipartiteState, ext::PipelineStep>> jobs;
  if (step_arg.empty()) {
    if (!state.empty() && state != "rho4x5") throw InputError("--step: required unless the state is rho4x5");
    const Rho4x5Pipeline pl = rho_4x5_pipeline();
    for (std::size_t i = 0; i < pl.steps.size(); ++i) jobs.emplace_back(pl.stages[i], pl.steps[i]);
  } else {
    const BipartiteState s = load_state(state);
    jobs.emplace_back(s, io::step_from_json(load_json_arg(step_arg, "--step")));
  }
  json bundle = {{"type", "bundle"}, {"certificates", json::array()}};
  std::ostringstream os;
  for (const auto& [core, step] : jobs) {
    const cert::ExtremalityCertificate ec = cert::extremality_certificate(core, step);
    bundle["certificates"].push_back(cert::to_json(ec));
    os << core.label() << " + " << ext::to_string(step.kind) << " on " << to_string(step.side) << ": PSD "
       << ext::to_string(ec.psd) << ", PPT " << ext::to_string(ec.ppt) << " (intersection dim " << ec.intersection_dim
       << ")\n";
  }
  emit(c, bundle, os.str());
  return kVerdict;
}

std::pair<Dims, std::pair<std::size_t, std::size_t>> parse_case(const std::string& text) {
  unsigned m = 0, n = 0, p = 0, q = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%ux%u:%u,%u%c", &m, &n, &p, &q, &tail) != 4 || !m || !n)
    throw InputError("--case: expected MxN:P,Q, got '" + text + "'");
  return {{m, n}, {p, q}};
}

int run_sample(const Common& c, const std::string& case_text, std::uint64_t seed, double tol) {
  const auto [d, br] = parse_case(case_text);
  num::GaussNewtonOptions go;
  go.tol = tol;
  const num::GaussNewtonResult r = num::gauss_newton_run(d.a, d.b, br.first, br.second, seed, go);
  json j = {{"type", "sample"},       {"dims", {d.a, d.b}},          {"birank", {br.first, br.second}},
            {"seed", seed},           {"converged", r.converged},    {"residual", r.residual},
            {"iterations", r.iterations}, {"min_eigenvalue", r.min_eigenvalue},
            {"min_eigenvalue_pt", r.min_eigenvalue_pt}};
  std::ostringstream os;
  os << d.a << "x" << d.b << " birank (" << br.first << "," << br.second << ") seed " << seed << ": "
     << (r.converged ? "converged" : "not converged") << ", residual " << r.residual << " after " << r.iterations
     << " iterations\n";
  if (r.converged) {
    const num::ExtensionDimensionReport e = num::numeric_extension_report(r.state);
    j["extension_dimension"] = e.dimension;
    j["singular_gap"] = {e.largest_below, e.smallest_above};
    os << "numeric extension dimension " << e.dimension << " (gap " << e.largest_below << " .. " << e.smallest_above
       << ")\n";
    json rows = json::array();
    for (Eigen::Index i = 0; i < r.state.matrix.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < r.state.matrix.cols(); ++k)
        row.push_back({r.state.matrix(i, k).real(), r.state.matrix(i, k).imag()});
      rows.push_back(row);
    }
    j["matrix"] = rows;
  }
  emit(c, j, os.str());
  return r.converged ? kVerdict : kInconclusive;
}

int run_survey(const Common& c, const std::vector<std::string>& cases_text, std::size_t samples, std::uint64_t seed,
               double tol, std::size_t threads) {
  std::vector<num::SurveyCase> cases;
  for (const auto& t : cases_text.empty() ? std::vector<std::string>{"3x3:4,4"} : cases_text) {
    const auto [d, br] = parse_case(t);
    cases.push_back({d, br.first, br.second});
  }
  num::SurveyOptions so;
  so.samples = samples;
  so.seed = seed;
  so.gauss_newton.tol = tol;
  so.threads = threads;
  const auto reps = num::unextendibility_survey(cases, so);
  emit(c, num::to_json(reps, so), num::to_table(reps, so));
  return kVerdict;
}

int run_verify(const Common& c, const std::string& file) {
  const json j = load_json_arg(file, "certificate");
  const alg::VerifyResult r = cert::verify_json(j);
  emit(c, {{"type", "verification"}, {"ok", r.ok}, {"message", r.message}},
       std::string(r.ok ? "verified: " : "rejected: ") + r.message + "\n");
  return r.ok ? kVerdict : kInconclusive;
}

int run_reproduce(const Common& c, std::uint64_t seed, std::size_t samples, bool long_jobs, const std::vector<int>& ids) {
  repro::ReproduceOptions opt;
  opt.seed = seed;
  opt.survey_samples = samples;
  opt.long_jobs = long_jobs;
  if (!c.json_out) opt.on_result = [](const repro::CriterionResult& r) { std::cout << repro::format_line(r) << std::endl; };
  for (int id : ids)
    if (id < 1 || id > repro::kCriteria) throw InputError("--criteria: no criterion " + std::to_string(id));
  const auto results = repro::run_criteria(ids, opt);
  const json m = repro::manifest(results, opt);
  if (!c.out.empty()) io::write_text_file(c.out, m.dump(2) + "\n");
  if (c.json_out) std::cout << m.dump(2) << "\n";
  return m["all_passed"].get<bool>() ? kVerdict : kInconclusive;
}

// Edges: the decomposition vectors (or the graph edges), drawn over their
// support. Positive coefficients only: solid; otherwise dashed.
struct PlotEdge {
  std::string name;
  std::vector<Site> sites;
  bool solid = true;
};

std::vector<PlotEdge> plot_edges(const Dims& d, const Decomposition& parts) {
  std::vector<PlotEdge> out;
  for (const auto& w : parts) {
    PlotEdge e;
    e.name = w.name;
    for (std::size_t i = 0; i < w.vector.size(); ++i) {
      if (w.vector[i].is_zero()) continue;
      e.sites.emplace_back(i / d.b, i % d.b);
      if (!w.vector[i].is_real() || sgn(w.vector[i].re()) < 0) e.solid = false;
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::string plot_text(const Dims& d, const std::vector<PlotEdge>& edges) {
  std::ostringstream os;
  std::vector<std::string> cell(d.total(), ".");
  for (std::size_t n = 0; n < edges.size(); ++n)
    for (const auto& [i, j] : edges[n].sites) {
      std::string& s = cell[d.index(i, j)];
      s = s == "." ? std::to_string(n) : s + "," + std::to_string(n);
    }
  std::size_t width = 3;
  for (const auto& s : cell) width = std::max(width, s.size() + 1);
  os << "grid " << d.a << "x" << d.b << " (rows A, columns B); cell = edges through the site\n";
  for (std::size_t i = 0; i < d.a; ++i) {
    for (std::size_t j = 0; j < d.b; ++j) os << std::string(width - cell[d.index(i, j)].size(), ' ') << cell[d.index(i, j)];
    os << "\n";
  }
  for (std::size_t n = 0; n < edges.size(); ++n) {
    os << "  " << n << " " << (edges[n].solid ? "solid " : "dashed") << " " << edges[n].name << ":";
    for (const auto& [i, j] : edges[n].sites) os << " |" << i << j << ">";
    os << "\n";
  }
  return os.str();
}

std::string plot_svg(const Dims& d, const std::vector<PlotEdge>& edges) {
  const int step = 60, pad = 40;
  const int w = pad * 2 + step * static_cast<int>(d.b - 1), h = pad * 2 + step * static_cast<int>(d.a - 1);
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  for (std::size_t n = 0; n < edges.size(); ++n) {
    const auto& e = edges[n];
    os << "  <polyline fill=\"none\" stroke-width=\"3\" stroke=\"" << colors[n % 8] << "\""
       << (e.solid ? "" : " stroke-dasharray=\"6,4\"") << " points=\"";
    for (const auto& [i, j] : e.sites) os << pad + step * static_cast<int>(j) << "," << pad + step * static_cast<int>(i) << " ";
    os << "\"><title>" << e.name << "</title></polyline>\n";
  }
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j)
      os << "  <circle cx=\"" << pad + step * static_cast<int>(j) << "\" cy=\"" << pad + step * static_cast<int>(i)
         << "\" r=\"6\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

int run_plot(const Common& c, const std::string& state, const std::string& graph, const std::string& format) {
  Dims d;
  Decomposition parts;
  if (!graph.empty()) {
    const GridGraph g = io::graph_from_json(load_json_arg(graph, "--graph"));
    d = g.dims;
    parts = g.edge_vectors();
  } else {
    const BipartiteState s = load_state(state);
    if (!s.decomposition()) throw InputError("--state: plotting needs a state with an attached decomposition");
    d = s.dims();
    parts = *s.decomposition();
  }
  const auto edges = plot_edges(d, parts);
  const std::string body = format == "svg" ? plot_svg(d, edges) : plot_text(d, edges);
  json j = {{"type", "plot"}, {"format", format}, {"dims", {d.a, d.b}}, {"body", body}};
  if (!c.out.empty() && !c.json_out) {
    io::write_text_file(c.out, body);
    return kVerdict;
  }
  emit(c, j, body);
  return kVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locext: exact local extensions, PPT and Schmidt-number certificates for bipartite states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "locext 0.1.0");

  Common common;
  std::string state, graph, family, step, witness, format = "text";
  std::size_t k = 3, samples = 100, threads = 1;
  unsigned nmax = 0;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool normalize = false, long_jobs = false, progress = false;
  std::vector<std::string> exclude, cases;
  std::vector<int> criteria;
  std::string cert_file;

  auto* build = app.add_subcommand("build", "Build a state from a family, a named state or a grid graph");
  build->add_option("--family", family, "rho^(k) for this k");
  build->add_option("--state", state, "rho3x3 | rho4x5 | stage1 | stage2 | tiles | qubit | family:k");
  build->add_option("--graph", graph, "Grid graph JSON file");
  build->add_flag("--normalize", normalize, "Also emit the trace-normalized matrix (display only)");

  auto* ppt = app.add_subcommand("ppt-check", "Exact PPT certificate");
  ppt->add_option("--state", state, "State file, built-in name, or - for stdin (default)");

  auto* extend = app.add_subcommand("extend", "Apply serialized pipeline steps");
  extend->add_option("--state", state, "Core state");
  extend->add_option("--step", step, "Step or list of steps (file or inline JSON)")->required();

  auto* certify = app.add_subcommand("certify-sn", "Schmidt-number lower and upper certificates");
  certify->add_option("--state", state, "State file or built-in name")->required();
  certify->add_option("--k", k, "Certify SN >= k");
  certify->add_option("--nmax", nmax, "Largest power tried (default 2k)");
  certify->add_option("--witness", witness, "Witness vector (file or inline JSON array)");
  certify->add_option("--exclude", exclude, "Variables whose minors are dropped");
  certify->add_flag("--progress", progress, "Report Buchberger progress on stderr");
  std::string project;
  certify->add_option("--project", project, "Also bound SN via the projection removing |i> on a side, e.g. B:0");

  auto* extremal = app.add_subcommand("extremal", "Extremality checks for extension steps");
  extremal->add_option("--state", state, "Core state (default: the rho4x5 pipeline)");
  extremal->add_option("--step", step, "Step (file or inline JSON)");

  auto* sample = app.add_subcommand("sample", "One Gauss-Newton sample of a fixed-birank PPT state");
  std::string case_text = "3x3:4,4";
  sample->add_option("--case", case_text, "MxN:P,Q");
  sample->add_option("--seed", seed);
  sample->add_option("--tol", tol);

  auto* survey = app.add_subcommand("survey", "Unextendibility survey of random fixed-birank PPT states");
  survey->add_option("--case", cases, "MxN:P,Q (repeatable; default 3x3:4,4)");
  survey->add_option("--samples", samples);
  survey->add_option("--seed", seed);
  survey->add_option("--tol", tol);
  survey->add_option("--threads", threads);

  auto* verify = app.add_subcommand("verify", "Replay any certificate");
  verify->add_option("certificate", cert_file, "Certificate file")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Run the acceptance criteria");
  reproduce->add_option("--seed", seed);
  reproduce->add_option("--samples", samples, "Survey samples");
  reproduce->add_option("--criteria", criteria, "Subset of criteria 1..9");
  reproduce->add_flag("--long", long_jobs, "Include the k = 5 family certificate");

  auto* plot = app.add_subcommand("plot", "Grid diagram of a state's edge structure");
  plot->add_option("--state", state);
  plot->add_option("--graph", graph);
  plot->add_option("--format", format)->check(CLI::IsMember({"text", "svg"}));

  for (auto* sub : app.get_subcommands({})) add_common(sub, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*build) return run_build(common, family, state, graph, normalize);
    if (*ppt) return run_ppt_check(common, state);
    if (*extend) return run_extend(common, state, step);
    if (*certify) return run_certify(common, state, k, nmax, witness, exclude, progress, project);
    if (*extremal) return run_extremal(common, state, step);
    if (*sample) return run_sample(common, case_text, seed, tol);
    if (*survey) return run_survey(common, cases, samples, seed, tol, threads);
    if (*verify) return run_verify(common, cert_file);
    if (*reproduce) return run_reproduce(common, seed, samples, long_jobs, criteria);
    if (*plot) return run_plot(common, state, graph, format);
  } catch (const InputError& e) {
    std::cerr << "locext: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "locext: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    std::cerr << "locext: malformed JSON field: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
