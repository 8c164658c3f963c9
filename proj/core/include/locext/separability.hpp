#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "locext/bipartite.hpp"

namespace locext::alg {

enum class SeparabilityVerdict { Separable, SchmidtAtMost2, Unknown };
const char* to_string(SeparabilityVerdict v);

/// Rule names as they appear in reports.
inline constexpr const char* kRuleProduct = "product-block";
inline constexpr const char* kRuleR1 = "R1:ppt-2x2-2x3";
inline constexpr const char* kRuleR2 = "R2:local-block-sum";
inline constexpr const char* kRuleR3 = "R3:ppt-2x4-kernel-product";
inline constexpr const char* kRuleR4 = "R4:ppt-3x3-sn2";

/// Trusted external results each rule relies on.
const char* trusted_statement(const std::string& rule);

struct BlockReport {
  std::vector<std::size_t> rows_a;
  std::vector<std::size_t> rows_b;
  Dims dims;
  bool ppt = false;
  SeparabilityVerdict verdict = SeparabilityVerdict::Unknown;
  std::string rule;
};

struct SeparabilityReport {
  SeparabilityVerdict verdict = SeparabilityVerdict::Unknown;
  /// Top-level rule: the block rule for a single block, R2 otherwise.
  std::string rule;
  std::vector<BlockReport> blocks;
  std::vector<std::string> rules_used;
  std::vector<std::string> trusted_rules;
  /// 1 for separable, 2 under R4, 0 when nothing is certified.
  std::size_t sn_upper = 0;
};

struct SeparabilityOptions {
  /// Extra product vectors |a>|b> tried against the kernel of 2x4 blocks.
  std::vector<std::pair<ExactVector, ExactVector>> kernel_candidates;
};

/// Splits the support into a direct sum of local blocks and classifies each
/// block by the rule set: products (1 x k), R1, R3, R4.
SeparabilityReport separability_rules(const BipartiteState& s, const SeparabilityOptions& options = {});

}  // namespace locext::alg
