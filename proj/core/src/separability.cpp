#include "locext/separability.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "locext/errors.hpp"
#include "locext/linalg.hpp"
#include "locext/projection_bound.hpp"

namespace locext {

namespace alg {

const char* to_string(SeparabilityVerdict v) {
  switch (v) {
    case SeparabilityVerdict::Separable: return "Separable";
    case SeparabilityVerdict::SchmidtAtMost2: return "SchmidtAtMost2";
    case SeparabilityVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

const char* trusted_statement(const std::string& rule) {
  if (rule == kRuleR1) return "PPT states on 2x2 and 2x3 are separable (Peres-Horodecki)";
  if (rule == kRuleR3) return "a 2x4 PPT state with a product vector in its kernel is separable";
  if (rule == kRuleR4) return "3x3 PPT states have Schmidt number at most 2";
  return "";
}

namespace {

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool kernel_has_product(const BipartiteState& block, const SeparabilityOptions& opt) {
  const Subspace r = range(block.matrix());
  const Dims d = block.dims();
  auto orthogonal_to_range = [&](const ExactVector& v) {
    for (const auto& b : r.basis())
      if (!inner(b, v).is_zero()) return false;
    return true;
  };
  for (std::size_t i = 0; i < d.a; ++i)
    for (std::size_t j = 0; j < d.b; ++j)
      if (orthogonal_to_range(basis_ket(d, i, j))) return true;
  for (const auto& [a, b] : opt.kernel_candidates)
    if (a.size() == d.a && b.size() == d.b && !is_zero(a) && !is_zero(b) && orthogonal_to_range(kron(a, b)))
      return true;
  return false;
}

void classify(BlockReport& br, const BipartiteState& block, const SeparabilityOptions& opt) {
  const Dims d = block.dims();
  const std::size_t lo = std::min(d.a, d.b), hi = std::max(d.a, d.b);
  if (lo <= 1) {
    br.ppt = true;
    br.verdict = SeparabilityVerdict::Separable;
    br.rule = kRuleProduct;
    return;
  }
  br.ppt = is_ppt(block);
  if (!br.ppt) return;
  if (lo == 2 && hi <= 3) {
    br.verdict = SeparabilityVerdict::Separable;
    br.rule = kRuleR1;
  } else if (lo == 2 && hi == 4 && kernel_has_product(block, opt)) {
    br.verdict = SeparabilityVerdict::Separable;
    br.rule = kRuleR3;
  } else if (lo == 3 && hi == 3) {
    br.verdict = SeparabilityVerdict::SchmidtAtMost2;
    br.rule = kRuleR4;
  }
}

}  // namespace

SeparabilityReport separability_rules(const BipartiteState& s, const SeparabilityOptions& options) {
  const Dims d = s.dims();
  const ExactMatrix& m = s.matrix();
  std::vector<std::size_t> support;
  for (std::size_t x = 0; x < d.total(); ++x)
    if (!m(x, x).is_zero()) support.push_back(x);

  // connected components of the nonzero pattern, then merge components
  // whose local rectangles hit each other's support
  Dsu dsu(d.total());
  for (std::size_t a : support)
    for (std::size_t b : support)
      if (a < b && !m(a, b).is_zero()) dsu.unite(a, b);
  const std::set<std::size_t> support_set(support.begin(), support.end());
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::size_t, std::pair<std::set<std::size_t>, std::set<std::size_t>>> rect;
    for (std::size_t x : support) {
      auto& r = rect[dsu.find(x)];
      r.first.insert(x / d.b);
      r.second.insert(x % d.b);
    }
    for (const auto& [root, r] : rect)
      for (std::size_t i : r.first)
        for (std::size_t j : r.second) {
          const std::size_t x = d.index(i, j);
          if (support_set.count(x) && dsu.find(x) != root) {
            dsu.unite(x, root);
            changed = true;
          }
        }
  }

  std::map<std::size_t, std::pair<std::set<std::size_t>, std::set<std::size_t>>> rect;
  for (std::size_t x : support) {
    auto& r = rect[dsu.find(x)];
    r.first.insert(x / d.b);
    r.second.insert(x % d.b);
  }

  SeparabilityReport out;
  std::set<std::string> used;
  bool all_sep = true, all_sn2 = true;
  for (const auto& [root, r] : rect) {
    BlockReport br;
    br.rows_a.assign(r.first.begin(), r.first.end());
    br.rows_b.assign(r.second.begin(), r.second.end());
    br.dims = {br.rows_a.size(), br.rows_b.size()};
    const BipartiteState block = project_local_block(s, br.rows_a, br.rows_b);
    classify(br, block, options);
    if (br.verdict != SeparabilityVerdict::Separable) all_sep = false;
    if (br.verdict == SeparabilityVerdict::Unknown) all_sn2 = false;
    if (!br.rule.empty()) used.insert(br.rule);
    out.blocks.push_back(std::move(br));
  }

  if (out.blocks.size() > 1 || out.blocks.empty()) {
    out.rule = kRuleR2;
    used.insert(kRuleR2);
  } else {
    out.rule = out.blocks.front().rule;
  }
  if (all_sep) {
    out.verdict = SeparabilityVerdict::Separable;
    out.sn_upper = 1;
  } else if (all_sn2) {
    out.verdict = SeparabilityVerdict::SchmidtAtMost2;
    out.sn_upper = 2;
  } else {
    out.verdict = SeparabilityVerdict::Unknown;
    out.rule.clear();
  }
  out.rules_used.assign(used.begin(), used.end());
  for (const auto& rule : out.rules_used)
    if (*trusted_statement(rule)) out.trusted_rules.push_back(rule);
  return out;
}

}  // namespace alg

namespace ext {

ProjectionBound sn_bounds_from_projection(const BipartiteState& s, Side side, const ExactVector& phi,
                                          const alg::SeparabilityOptions& options) {
  BipartiteState projected = project_out_vector(s, side, phi);
  alg::SeparabilityReport rep = alg::separability_rules(projected, options);
  ProjectionBound out{std::move(projected), rep, 0, {}};
  out.inequality = "SN(" + s.label() + ") <= SN(projected) + 1";
  if (rep.sn_upper > 0) {
    out.sn_upper = rep.sn_upper + 1;
    out.inequality += " <= " + std::to_string(out.sn_upper);
  }
  return out;
}

}  // namespace ext

}  // namespace locext
