#include "privrec/synthetic.hpp"

#include <set>
#include <stdexcept>
#include <vector>

#include "privrec/rng.hpp"

namespace privrec {

Graph generate_synthetic(NodeId nodes, NodeId edges_per_node, std::uint64_t seed) {
  if (edges_per_node < 1) throw std::domain_error("edges_per_node must be at least 1");
  if (nodes <= edges_per_node) throw std::domain_error("nodes must exceed edges_per_node");

  std::vector<std::pair<NodeId, NodeId>> edges;
  // One entry per edge endpoint; sampling an index uniformly is sampling a
  // node proportionally to its degree.
  std::vector<NodeId> endpoints;
  for (NodeId a = 0; a < edges_per_node; ++a) {
    for (NodeId b = a + 1; b < edges_per_node; ++b) {
      edges.emplace_back(a, b);
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }

  Rng rng = substream(seed, nodes, edges_per_node);
  for (NodeId v = edges_per_node; v < nodes; ++v) {
    std::set<NodeId> chosen;
    while (chosen.size() < edges_per_node) {
      NodeId pick = endpoints.empty()
                        ? static_cast<NodeId>(rng.below(v))
                        : endpoints[rng.below(endpoints.size())];
      chosen.insert(pick);  // re-draw duplicates until m distinct targets
    }
    for (NodeId w : chosen) {
      edges.emplace_back(w, v);
      endpoints.push_back(w);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(nodes, false, edges);
}

}  // namespace privrec
