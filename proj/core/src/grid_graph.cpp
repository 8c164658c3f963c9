#include "locext/grid_graph.hpp"

#include <algorithm>
#include <string>

#include "locext/errors.hpp"

namespace locext {

namespace {

std::string site_str(const Site& s) {
  return "(" + std::to_string(s.first) + "," + std::to_string(s.second) + ")";
}

void check_site(const Dims& d, const Site& s) {
  if (s.first >= d.a || s.second >= d.b)
    throw Error(ErrorKind::BoundsViolation, "site " + site_str(s) + " outside " + std::to_string(d.a) + "x" +
                                                std::to_string(d.b) + " grid");
}

}  // namespace

void GridGraph::validate() const {
  if (dims.a == 0 || dims.b == 0) throw Error(ErrorKind::PreconditionViolation, "grid dimensions must be positive");
  for (const auto& e : solid) {
    if (e.sites.empty()) throw Error(ErrorKind::PreconditionViolation, "solid edge without sites");
    for (const auto& s : e.sites) check_site(dims, s);
    std::vector<Site> sorted = e.sites;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::PreconditionViolation, "solid edge repeats a site");
    if (sgn(e.weight) <= 0) throw Error(ErrorKind::PreconditionViolation, "edge weights must be positive");
  }
  for (const auto& e : dashed) {
    check_site(dims, e.first);
    check_site(dims, e.second);
    if (e.first == e.second)
      throw Error(ErrorKind::PreconditionViolation, "dashed edge needs two distinct sites, got " + site_str(e.first));
    if (sgn(e.weight) <= 0) throw Error(ErrorKind::PreconditionViolation, "edge weights must be positive");
  }
}

Decomposition GridGraph::edge_vectors() const {
  validate();
  Decomposition out;
  for (std::size_t k = 0; k < solid.size(); ++k) {
    ExactVector v(dims.total());
    for (const auto& s : solid[k].sites) v[dims.index(s.first, s.second)] = 1;
    out.push_back({solid[k].weight, std::move(v), "solid" + std::to_string(k)});
  }
  for (std::size_t k = 0; k < dashed.size(); ++k) {
    ExactVector v(dims.total());
    v[dims.index(dashed[k].first.first, dashed[k].first.second)] = 1;
    v[dims.index(dashed[k].second.first, dashed[k].second.second)] = -1;
    out.push_back({dashed[k].weight, std::move(v), "dashed" + std::to_string(k)});
  }
  return out;
}

BipartiteState grid_to_state(const GridGraph& g, std::string label) {
  Decomposition parts = g.edge_vectors();
  ExactMatrix m = sum_of_projectors(parts, g.dims.total());
  return BipartiteState(g.dims, std::move(m), std::move(label), std::move(parts));
}

}  // namespace locext
