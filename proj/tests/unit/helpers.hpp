#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "privrec/graph.hpp"
#include "privrec/rng.hpp"
#include "privrec/utility.hpp"

namespace testutil {

inline privrec::Graph undirected(privrec::NodeId n,
                                 std::vector<std::pair<privrec::NodeId, privrec::NodeId>> edges) {
  return privrec::Graph::from_edges(n, false, std::move(edges));
}

inline privrec::Graph directed(privrec::NodeId n,
                               std::vector<std::pair<privrec::NodeId, privrec::NodeId>> edges) {
  return privrec::Graph::from_edges(n, true, std::move(edges));
}

// The two fixtures most tests share. g1 has one shared neighbor per
// candidate; g2 gives its candidates distinct scores (2 and 1).
inline privrec::Graph g1() { return undirected(4, {{0, 1}, {1, 2}, {1, 3}}); }
inline privrec::Graph g2() { return undirected(5, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 4}}); }

// Walks of exactly `len` hops from `from` to every node, by plain recursive
// enumeration. Deliberately independent of the library's frontier expansion.
inline void count_walks_into(const privrec::Graph& g, privrec::NodeId at, int remaining,
                             std::vector<std::uint64_t>& out) {
  if (remaining == 0) {
    ++out[at];
    return;
  }
  for (privrec::NodeId w :
       g.neighbors(at, g.directed() ? privrec::Direction::Out : privrec::Direction::Undirected))
    count_walks_into(g, w, remaining - 1, out);
}

inline std::vector<std::uint64_t> count_walks(const privrec::Graph& g, privrec::NodeId from,
                                              int len) {
  std::vector<std::uint64_t> out(g.node_count(), 0);
  count_walks_into(g, from, len, out);
  return out;
}

// Weighted-paths scores recomputed from the walk enumerator.
inline std::map<privrec::NodeId, double> weighted_paths_oracle(const privrec::Graph& g,
                                                               privrec::NodeId r, double gamma,
                                                               int max_len) {
  std::map<privrec::NodeId, double> scores;
  for (privrec::NodeId i : privrec::candidate_set(g, r)) scores[i] = 0.0;
  double coeff = 1.0;
  for (int len = 2; len <= max_len; ++len) {
    std::vector<std::uint64_t> walks = count_walks(g, r, len);
    for (auto& [node, score] : scores) score += coeff * static_cast<double>(walks[node]);
    coeff *= gamma;
  }
  return scores;
}

// Common-neighbors scores recomputed by direct set intersection.
inline std::map<privrec::NodeId, double> common_neighbors_oracle(const privrec::Graph& g,
                                                                 privrec::NodeId r) {
  auto fwd = g.directed() ? privrec::Direction::Out : privrec::Direction::Undirected;
  std::vector<privrec::NodeId> nr = g.neighbors(r, fwd);
  std::map<privrec::NodeId, double> scores;
  for (privrec::NodeId i : privrec::candidate_set(g, r)) {
    std::vector<privrec::NodeId> ni = g.neighbors(i, fwd);
    std::vector<privrec::NodeId> both;
    std::set_intersection(ni.begin(), ni.end(), nr.begin(), nr.end(), std::back_inserter(both));
    scores[i] = static_cast<double>(both.size());
  }
  return scores;
}

inline bool matches_oracle(const privrec::UtilityVector& u,
                           const std::map<privrec::NodeId, double>& oracle, double tol) {
  if (u.size() != oracle.size()) return false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto it = oracle.find(u.candidates[i]);
    if (it == oracle.end() || std::abs(it->second - u.values[i]) > tol) return false;
  }
  return true;
}

// Relabels every node through perm (old id -> new id).
inline privrec::Graph permute_graph(const privrec::Graph& g,
                                    const std::vector<privrec::NodeId>& perm) {
  std::vector<std::pair<privrec::NodeId, privrec::NodeId>> edges;
  for (privrec::NodeId v = 0; v < g.node_count(); ++v)
    for (privrec::NodeId w : g.neighbors(v, privrec::Direction::Out))
      if (g.directed() || v < w) edges.emplace_back(perm[v], perm[w]);
  return privrec::Graph::from_edges(g.node_count(), g.directed(), edges);
}

// Uniform random permutation of [0, n) with perm[fixed] == fixed.
inline std::vector<privrec::NodeId> random_permutation_fixing(privrec::NodeId n,
                                                              privrec::NodeId fixed,
                                                              privrec::Rng& rng) {
  std::vector<privrec::NodeId> perm(n);
  for (privrec::NodeId v = 0; v < n; ++v) perm[v] = v;
  std::vector<privrec::NodeId> rest;
  for (privrec::NodeId v = 0; v < n; ++v)
    if (v != fixed) rest.push_back(v);
  for (std::size_t i = rest.size(); i > 1; --i)
    std::swap(rest[i - 1], rest[rng.below(i)]);
  std::size_t at = 0;
  for (privrec::NodeId v = 0; v < n; ++v)
    if (v != fixed) perm[v] = rest[at++];
  return perm;
}

}  // namespace testutil
