#include "locext/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <sstream>
#include <thread>

#include "locext/errors.hpp"
#include "locext/extension.hpp"

namespace locext::num {

namespace {

SampleOutcome run_sample(const SurveyCase& c, std::uint64_t seed, const SurveyOptions& opt) {
  SampleOutcome s;
  s.seed = seed;
  const GaussNewtonResult r = gauss_newton_run(c.dims.a, c.dims.b, c.p, c.q, seed, opt.gauss_newton);
  s.converged = r.converged;
  s.residual = r.residual;
  s.iterations = r.iterations;
  if (!r.converged) {
    s.note = "no convergence";
    return s;
  }
  try {
    s.extension_dim = static_cast<long>(numeric_extension_dimension(r.state, opt.svd_tol));
  } catch (const Error& e) {
    s.note = e.what();
  }
  return s;
}

}  // namespace

std::vector<SurveyReport> unextendibility_survey(const std::vector<SurveyCase>& cases, const SurveyOptions& opt) {
  std::vector<SurveyReport> out;
  for (const auto& c : cases) {
    SurveyReport rep;
    rep.dims = c.dims;
    rep.p = c.p;
    rep.q = c.q;
    rep.samples = opt.samples;
    rep.bound = ext::extension_count_bound(static_cast<long>(c.dims.a), static_cast<long>(c.dims.b),
                                           static_cast<long>(c.p), static_cast<long>(c.q));
    rep.expected = c.dims.a + static_cast<std::size_t>(std::max(rep.bound, 0L));
    if (opt.samples == 0) continue;
    rep.outcomes.resize(opt.samples);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next++) < opt.samples;) rep.outcomes[i] = run_sample(c, opt.seed + i, opt);
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(opt.threads, opt.samples));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    double sum = 0;
    for (const auto& s : rep.outcomes) {
      if (!s.converged) continue;
      ++rep.converged;
      sum += s.residual;
      rep.residual_max = std::max(rep.residual_max, s.residual);
      ++rep.extension_histogram[s.extension_dim];
      if (s.extension_dim != static_cast<long>(rep.expected)) rep.deviations.push_back(s.seed);
    }
    rep.residual_mean = rep.converged ? sum / double(rep.converged) : 0;
    out.push_back(std::move(rep));
  }
  return out;
}

nlohmann::json to_json(const SurveyReport& r) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [dim, count] : r.extension_histogram) hist[std::to_string(dim)] = count;
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.outcomes) {
    nlohmann::json j = {{"seed", s.seed}, {"converged", s.converged}, {"residual", s.residual},
                        {"iterations", s.iterations}, {"extension_dim", s.extension_dim}};
    if (!s.note.empty()) j["note"] = s.note;
    samples.push_back(std::move(j));
  }
  return {{"dims", {r.dims.a, r.dims.b}},
          {"birank", {r.p, r.q}},
          {"samples", r.samples},
          {"converged", r.converged},
          {"residual_max", r.residual_max},
          {"residual_mean", r.residual_mean},
          {"extension_histogram", hist},
          {"bound", r.bound},
          {"expected_dimension", r.expected},
          {"deviations", r.deviations},
          {"runs", samples}};
}

nlohmann::json to_json(const std::vector<SurveyReport>& reports, const SurveyOptions& opt) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& r : reports) cases.push_back(to_json(r));
  return {{"calibration",
           {{"seed", opt.seed},
            {"tol", opt.gauss_newton.tol},
            {"max_iter", opt.gauss_newton.max_iter},
            {"epsilon", opt.gauss_newton.epsilon},
            {"svd_tol", opt.svd_tol},
            {"note", "tolerance, iteration cap and start point are calibration choices"}}},
          {"cases", cases}};
}

std::string to_table(const std::vector<SurveyReport>& reports, const SurveyOptions& opt) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "# seed=%llu tol=%.1e max_iter=%zu epsilon=%.2f svd_tol=%.1e (calibration defaults)\n",
                static_cast<unsigned long long>(opt.seed), opt.gauss_newton.tol, opt.gauss_newton.max_iter,
                opt.gauss_newton.epsilon, opt.svd_tol);
  os << line;
  std::snprintf(line, sizeof line, "%-6s %-8s %7s %9s %6s %8s %12s  %s\n", "dims", "birank", "samples", "converged",
                "bound", "expected", "max_resid", "ext_dim histogram");
  os << line;
  for (const auto& r : reports) {
    std::string hist;
    for (const auto& [dim, count] : r.extension_histogram)
      hist += (hist.empty() ? "" : " ") + std::to_string(dim) + ":" + std::to_string(count);
    const std::string dims = std::to_string(r.dims.a) + "x" + std::to_string(r.dims.b);
    const std::string br = "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")";
    std::snprintf(line, sizeof line, "%-6s %-8s %7zu %9zu %6ld %8zu %12.2e  %s\n", dims.c_str(), br.c_str(), r.samples,
                  r.converged, r.bound, r.expected, r.residual_max, hist.c_str());
    os << line;
  }
  return os.str();
}

}  // namespace locext::num
