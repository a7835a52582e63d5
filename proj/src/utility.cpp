#include "privrec/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace privrec {

UtilityVector UtilityVector::from_entries(NodeId target,
                                          std::vector<std::pair<NodeId, double>> entries) {
  UtilityVector u;
  u.target = target;
  u.candidates.reserve(entries.size());
  u.values.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto [id, val] = entries[i];
    if (i > 0 && id <= entries[i - 1].first)
      throw std::invalid_argument("entries must be sorted by id and unique");
    if (id == target) throw std::invalid_argument("target cannot be its own candidate");
    if (!(val >= 0.0)) throw std::invalid_argument("negative utility");
    u.candidates.push_back(id);
    u.values.push_back(val);
    u.u_max = std::max(u.u_max, val);
  }
  return u;
}

std::size_t UtilityVector::index_of(NodeId id) const {
  auto it = std::lower_bound(candidates.begin(), candidates.end(), id);
  if (it == candidates.end() || *it != id)
    throw std::out_of_range("node " + std::to_string(id) + " is not a candidate");
  return static_cast<std::size_t>(it - candidates.begin());
}

std::vector<NodeId> candidate_set(const Graph& g, NodeId r) {
  const auto& linked = g.neighbors(r, g.directed() ? Direction::Out : Direction::Undirected);
  std::vector<NodeId> out;
  out.reserve(g.node_count() - 1 - linked.size());
  auto it = linked.begin();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    while (it != linked.end() && *it < v) ++it;
    if (v == r || (it != linked.end() && *it == v)) continue;
    out.push_back(v);
  }
  return out;
}

namespace {

UtilityVector restrict_to_candidates(const Graph& g, NodeId r, const std::vector<double>& scores) {
  UtilityVector u;
  u.target = r;
  u.candidates = candidate_set(g, r);
  u.values.reserve(u.candidates.size());
  for (NodeId c : u.candidates) {
    u.values.push_back(scores[c]);
    u.u_max = std::max(u.u_max, scores[c]);
  }
  return u;
}

}  // namespace

UtilityVector common_neighbors_utility(const Graph& g, NodeId r) {
  std::vector<double> counts(g.node_count(), 0.0);
  Direction fwd = g.directed() ? Direction::Out : Direction::Undirected;
  Direction back = g.directed() ? Direction::In : Direction::Undirected;
  for (NodeId w : g.neighbors(r, fwd))
    for (NodeId i : g.neighbors(w, back)) counts[i] += 1.0;
  return restrict_to_candidates(g, r, counts);
}

UtilityVector weighted_paths_utility(const Graph& g, NodeId r, double gamma, int max_path_len) {
  if (max_path_len < 2 || max_path_len > 3)
    throw std::invalid_argument("max_path_len must be 2 or 3");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");

  // walks[i] counts walks of the current length from r to i; scores
  // accumulate gamma^(l-2) * walks across lengths.
  std::vector<double> walks(g.node_count(), 0.0);
  std::vector<double> next(g.node_count(), 0.0);
  std::vector<double> scores(g.node_count(), 0.0);
  Direction fwd = g.directed() ? Direction::Out : Direction::Undirected;
  for (NodeId w : g.neighbors(r, fwd)) walks[w] = 1.0;
  double coeff = 1.0;
  for (int len = 2; len <= max_path_len; ++len) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (walks[v] == 0.0) continue;
      for (NodeId w : g.neighbors(v, fwd)) next[w] += walks[v];
    }
    walks.swap(next);
    for (NodeId v = 0; v < g.node_count(); ++v) scores[v] += coeff * walks[v];
    coeff *= gamma;
    if (coeff == 0.0) break;
  }
  return restrict_to_candidates(g, r, scores);
}

UtilityVector utility_vector(const Graph& g, NodeId r, const UtilityConfig& cfg) {
  if (cfg.kind == UtilityKind::CommonNeighbors) return common_neighbors_utility(g, r);
  return weighted_paths_utility(g, r, cfg.gamma, cfg.max_path_len);
}

SensitivityBound sensitivity_bound(const UtilityConfig& cfg, const Graph& g, NodeId r) {
  if (cfg.kind == UtilityKind::CommonNeighbors) return {1.0, SensitivityBound::Basis::Exact};
  if (cfg.max_path_len < 2 || cfg.max_path_len > 3)
    throw std::invalid_argument("max_path_len must be 2 or 3");
  if (cfg.gamma == 0.0 || cfg.max_path_len == 2) return {1.0, SensitivityBound::Basis::Exact};
  double df = 1.0 + 2.0 * cfg.gamma * (static_cast<double>(g.max_degree()) +
                                       static_cast<double>(g.degree(r)));
  return {df, SensitivityBound::Basis::Conservative};
}

std::size_t concentration_beta(const UtilityVector& u, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw std::invalid_argument("fraction must be in [0, 1]");
  double total = std::accumulate(u.values.begin(), u.values.end(), 0.0);
  if (total == 0.0) return 0;
  std::vector<double> sorted = u.values;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double need = fraction * total;
  if (need <= 0.0) return 0;
  double run = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    run += sorted[i];
    if (run >= need) return i + 1;
  }
  return sorted.size();
}

}  // namespace privrec
