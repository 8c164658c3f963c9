#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "locext/bipartite.hpp"

namespace locext::repro {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;  // seconds; 0 when no runtime bound applies
};

struct ReproduceOptions {
  std::uint64_t seed = 1;
  std::size_t survey_samples = 100;
  std::size_t random_cases = 50;
  /// Runs the k = 5 family certificate, aborting after long_budget seconds.
  bool long_jobs = false;
  double long_budget = 1800;
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriteria = 9;

CriterionResult run_criterion(int id, const ReproduceOptions& options = {});
/// Runs the given criteria (all when empty) in order.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const ReproduceOptions& options = {});

/// "[PASS] 4 family certificates k=2..4 (12.3 s): ..." style line.
std::string format_line(const CriterionResult& r);
nlohmann::json manifest(const std::vector<CriterionResult>& results, const ReproduceOptions& options);

/// Random exact data used by the randomized suites. Entries are Gaussian
/// integers with parts in [-range, range]; roughly `density` of them are
/// nonzero.
ExactVector random_vector(std::mt19937_64& rng, std::size_t n, long range = 2, double density = 0.7,
                          bool complex = true);
/// sum of `count` random weighted projectors; weights in 1..3.
Decomposition random_decomposition(std::mt19937_64& rng, std::size_t dim, std::size_t count, bool complex = true);
ExactMatrix random_hermitian_exact(std::mt19937_64& rng, std::size_t n, long range = 3);

struct LiftCase {
  BipartiteState extended;
  Side side = Side::A;
  std::size_t perp_index = 0;
  Decomposition core_vectors;
};

/// A random PSD state on dims <= 3x3 and a decomposition of its core block
/// obtained by projecting a decomposition of the full state.
LiftCase random_lift_case(std::mt19937_64& rng);

struct PeelCase {
  ExactMatrix w;
  Dims dims;
  Side side = Side::A;
  std::size_t perp_index = 0;
};

/// Hermitian W = H (on the core sites, indefinite) + G (PSD, full support),
/// so the edge block is PSD and carries the coupling in its range.
PeelCase random_peel_case(std::mt19937_64& rng);

}  // namespace locext::repro
