#include "privrec/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace privrec {

namespace {

// Every candidate edit slot, optionally excluding those touching r.
std::vector<std::pair<NodeId, NodeId>> edit_slots(const Graph& g, NodeId r,
                                                  bool include_incident) {
  std::vector<std::pair<NodeId, NodeId>> slots;
  NodeId n = g.node_count();
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = g.directed() ? 0 : a + 1; b < n; ++b) {
      if (a == b) continue;
      if (!include_incident && (a == r || b == r)) continue;
      slots.emplace_back(a, b);
    }
  }
  return slots;
}

EdgeEdit toggle_for(const Graph& g, NodeId a, NodeId b) {
  return g.has_edge(a, b) ? remove_edge(a, b) : add_edge(a, b);
}

}  // namespace

AuditReport audit_mechanism(const Graph& g, NodeId r, MechanismKind mech,
                            const UtilityConfig& cfg, const PrivacyParams& p,
                            const AuditOptions& opt) {
  p.validate();
  NodeId cap = mech == MechanismKind::Laplace ? 10 : 20;
  if (g.node_count() > cap) throw std::length_error("graph too large to audit");

  UtilityVector base_u = utility_vector(g, r, cfg);
  AuditReport rep;
  rep.target = r;
  rep.epsilon_claimed = p.epsilon;
  if (base_u.candidates.empty()) return rep;  // nothing is ever recommended

  double quad_tol = opt.tol * 1e-4;
  double x = 0.0;
  if (mech == MechanismKind::Smoothing) {
    x = opt.smoothing_x ? *opt.smoothing_x : smoothing_x(p.epsilon, base_u.size());
    rep.epsilon_claimed = smoothing_epsilon(x, base_u.size());
  }

  auto distribution = [&](const UtilityVector& u) -> RecommendationDistribution {
    switch (mech) {
      case MechanismKind::Exponential:
        return exponential_distribution(u, p);
      case MechanismKind::Laplace:
        return laplace_distribution(u, p, quad_tol);
      case MechanismKind::Smoothing:
        return smoothing_distribution(best_recommendation(u), x);
    }
    throw std::logic_error("bad mechanism");
  };

  RecommendationDistribution base_d = distribution(base_u);
  for (auto [a, b] : edit_slots(g, r, opt.strict_neighbors)) {
    EdgeEdit edit = toggle_for(g, a, b);
    Graph g2 = g.apply_edit(edit);
    UtilityVector u2 = utility_vector(g2, r, cfg);
    if (u2.candidates != base_u.candidates) {
      // Only reachable with strict_neighbors: an edit at r rewrites the
      // candidate set, so some node is recommendable in one world only.
      rep.max_log_ratio = std::numeric_limits<double>::infinity();
      rep.witness_edit = edit;
      NodeId diff = 0;
      for (NodeId c : base_u.candidates)
        if (!std::binary_search(u2.candidates.begin(), u2.candidates.end(), c)) diff = c;
      for (NodeId c : u2.candidates)
        if (!std::binary_search(base_u.candidates.begin(), base_u.candidates.end(), c)) diff = c;
      rep.witness_candidate = diff;
      rep.passed = false;
      return rep;
    }
    RecommendationDistribution d2 = distribution(u2);
    for (std::size_t i = 0; i < base_d.probs.size(); ++i) {
      double lr = std::abs(std::log(base_d.probs[i]) - std::log(d2.probs[i]));
      ++rep.pairs_checked;
      if (lr > rep.max_log_ratio) {
        rep.max_log_ratio = lr;
        rep.witness_edit = edit;
        rep.witness_candidate = base_d.candidates[i];
      }
    }
  }

  double slack = (mech == MechanismKind::Laplace ? 3.0 * opt.tol : 0.0) + 1e-12;
  rep.passed = rep.max_log_ratio <= rep.epsilon_claimed + slack;
  return rep;
}

namespace {

bool is_strict_argmax(const UtilityVector& u, std::size_t xi) {
  for (std::size_t i = 0; i < u.values.size(); ++i)
    if (i != xi && u.values[i] >= u.values[xi]) return false;
  return true;
}

// Depth-first over size-`want` subsets of slots[from..]; graphs are edited
// incrementally so each recursion level applies one toggle.
bool search_subsets(const Graph& g, NodeId r, NodeId x, const UtilityConfig& cfg,
                    const std::vector<std::pair<NodeId, NodeId>>& slots, std::size_t from,
                    int want) {
  if (want == 0) {
    UtilityVector u = utility_vector(g, r, cfg);
    return is_strict_argmax(u, u.index_of(x));
  }
  for (std::size_t i = from; i + static_cast<std::size_t>(want) <= slots.size(); ++i) {
    Graph g2 = g.apply_edit(toggle_for(g, slots[i].first, slots[i].second));
    if (search_subsets(g2, r, x, cfg, slots, i + 1, want - 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::uint64_t> brute_force_t(const Graph& g, NodeId r, NodeId x,
                                           const UtilityConfig& cfg, int max_depth) {
  if (g.node_count() > 8) throw std::invalid_argument("graph too large for brute force");
  if (max_depth < 0 || max_depth > 5) throw std::invalid_argument("max_depth must be in [0, 5]");
  UtilityVector u = utility_vector(g, r, cfg);
  if (!std::binary_search(u.candidates.begin(), u.candidates.end(), x))
    throw std::invalid_argument("x must be a candidate of r");
  if (!(u.u_max > 0.0)) throw std::domain_error("target has all-zero utility");

  std::vector<std::pair<NodeId, NodeId>> slots = edit_slots(g, r, false);
  for (int depth = 0; depth <= max_depth; ++depth)
    if (search_subsets(g, r, x, cfg, slots, 0, depth)) return depth;
  return std::nullopt;
}

namespace {

template <typename Visit>
void for_each_edit(const UtilityConfig& cfg, const std::vector<Graph>& population, Visit visit) {
  for (std::size_t gi = 0; gi < population.size(); ++gi) {
    const Graph& g = population[gi];
    for (NodeId r = 0; r < g.node_count(); ++r) {
      UtilityVector u = utility_vector(g, r, cfg);
      if (u.candidates.empty()) continue;
      for (auto [a, b] : edit_slots(g, r, false)) {
        EdgeEdit edit = toggle_for(g, a, b);
        UtilityVector u2 = utility_vector(g.apply_edit(edit), r, cfg);
        double l1 = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
          l1 += std::abs(u.values[i] - u2.values[i]);
        visit(gi, r, edit, l1);
      }
    }
  }
}

}  // namespace

double brute_force_sensitivity(const UtilityConfig& cfg, const std::vector<Graph>& population) {
  double worst = 0.0;
  for_each_edit(cfg, population,
                [&](std::size_t, NodeId, const EdgeEdit&, double l1) { worst = std::max(worst, l1); });
  return worst;
}

std::optional<SensitivityViolation> sensitivity_bound_violation(
    const UtilityConfig& cfg, const std::vector<Graph>& population) {
  std::optional<SensitivityViolation> hit;
  for_each_edit(cfg, population, [&](std::size_t gi, NodeId r, const EdgeEdit& edit, double l1) {
    if (hit) return;
    double bound = sensitivity_bound(cfg, population[gi], r).delta_f;
    if (l1 > bound + 1e-9) hit = SensitivityViolation{gi, r, edit, l1, bound};
  });
  return hit;
}

std::vector<Graph> exhaustive_population(NodeId max_nodes) {
  if (max_nodes < 2 || max_nodes > 6)
    throw std::invalid_argument("exhaustive population supports 2..6 nodes");
  std::vector<Graph> out;
  for (NodeId n = 2; n <= max_nodes; ++n) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<NodeId, NodeId>> edges;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask & (1u << i)) edges.push_back(pairs[i]);
      out.push_back(Graph::from_edges(n, false, edges));
    }
  }
  return out;
}

std::vector<Graph> random_population(NodeId nodes, std::size_t count, double edge_prob,
                                     std::uint64_t seed) {
  if (nodes < 2 || nodes > 16) throw std::invalid_argument("nodes must be in [2, 16]");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw std::invalid_argument("edge_prob must be in [0, 1]");
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t gi = 0; gi < count; ++gi) {
    Rng rng = substream(seed, gi, 0x67726170);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId a = 0; a < nodes; ++a)
      for (NodeId b = a + 1; b < nodes; ++b)
        if (rng.uniform01() < edge_prob) edges.emplace_back(a, b);
    out.push_back(Graph::from_edges(nodes, false, edges));
  }
  return out;
}

bool is_connected(const Graph& g) {
  NodeId n = g.node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  NodeId visited = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    auto push = [&](NodeId w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    };
    for (NodeId w : g.neighbors(v, Direction::Out)) push(w);
    if (g.directed())
      for (NodeId w : g.neighbors(v, Direction::In)) push(w);
  }
  return visited == n;
}

}  // namespace privrec
