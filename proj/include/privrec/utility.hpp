#pragma once

#include <cstddef>
#include <vector>

#include "privrec/graph.hpp"

namespace privrec {

enum class UtilityKind { CommonNeighbors, WeightedPaths };

struct UtilityConfig {
  UtilityKind kind = UtilityKind::CommonNeighbors;
  double gamma = 0.005;   // weight decay per extra hop, weighted paths only
  int max_path_len = 3;   // longest counted walk; only 2 and 3 are supported
};

// Utility scores for one target, over its candidate set. candidates is
// sorted ascending and values runs parallel to it. Scores are nonnegative
// and u_max is their maximum (0 when there are no candidates).
struct UtilityVector {
  NodeId target = 0;
  std::vector<NodeId> candidates;
  std::vector<double> values;
  double u_max = 0.0;

  std::size_t size() const { return candidates.size(); }

  // entries must be sorted by id, unique, with nonnegative values.
  static UtilityVector from_entries(NodeId target,
                                    std::vector<std::pair<NodeId, double>> entries);
  // Index of id in candidates; throws std::out_of_range when absent.
  std::size_t index_of(NodeId id) const;
  double value_of(NodeId id) const { return values[index_of(id)]; }
};

// Nodes the target could be newly linked to: everything except the target
// itself and its existing (out-)neighbors.
std::vector<NodeId> candidate_set(const Graph& g, NodeId r);

// u_i = number of common neighbors of i and r (shared out-neighbors on
// directed graphs), restricted to the candidate set.
UtilityVector common_neighbors_utility(const Graph& g, NodeId r);

// u_i = sum over walk lengths l in [2, max_path_len] of gamma^(l-2) times
// the number of length-l walks from r to i, restricted to the candidate set.
// max_path_len = 2 ignores gamma; values above 3 are rejected.
UtilityVector weighted_paths_utility(const Graph& g, NodeId r, double gamma, int max_path_len = 3);

UtilityVector utility_vector(const Graph& g, NodeId r, const UtilityConfig& cfg);

struct SensitivityBound {
  double delta_f = 1.0;
  enum class Basis { Exact, Conservative } basis = Basis::Exact;
};

// Upper bound on the L1 change of the candidate-restricted utility vector
// under one edge edit not incident to r. Common neighbors: exactly 1.
// Weighted paths (max_path_len <= 3): 1 + 2*gamma*(max_degree + degree(r)),
// conservative.
SensitivityBound sensitivity_bound(const UtilityConfig& cfg, const Graph& g, NodeId r);

// Smallest number of top-scoring candidates holding at least the given
// fraction of total utility mass; 0 when total mass is 0. Diagnostic only.
std::size_t concentration_beta(const UtilityVector& u, double fraction);

}  // namespace privrec
