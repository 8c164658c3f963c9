#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "locext/numlab.hpp"

namespace locext::num {

struct SurveyCase {
  Dims dims;
  std::size_t p = 0, q = 0;
};

struct SurveyOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  GaussNewtonOptions gauss_newton;
  double svd_tol = 1e-7;
  std::size_t threads = 1;
};

struct SampleOutcome {
  std::uint64_t seed = 0;
  bool converged = false;
  double residual = 0;
  std::size_t iterations = 0;
  /// -1 when not measured (no convergence or rank ambiguity).
  long extension_dim = -1;
  std::string note;
};

struct SurveyReport {
  Dims dims;
  std::size_t p = 0, q = 0;
  std::size_t samples = 0;
  std::size_t converged = 0;
  double residual_max = 0;   // over converged runs
  double residual_mean = 0;
  std::map<long, std::size_t> extension_histogram;
  long bound = 0;
  std::size_t expected = 0;  // m + max(bound, 0)
  std::vector<std::uint64_t> deviations;  // seeds whose dimension differs from expected
  std::vector<SampleOutcome> outcomes;
};

/// Sample i of every case uses seed options.seed + i. Results are merged in
/// seed order regardless of the thread count.
std::vector<SurveyReport> unextendibility_survey(const std::vector<SurveyCase>& cases, const SurveyOptions& options);

nlohmann::json to_json(const SurveyReport& r);
nlohmann::json to_json(const std::vector<SurveyReport>& r, const SurveyOptions& options);
/// Aligned-column table with a header stating the calibration defaults.
std::string to_table(const std::vector<SurveyReport>& r, const SurveyOptions& options);

}  // namespace locext::num
