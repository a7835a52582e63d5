#pragma once

#include <cstdint>

#include "privrec/graph.hpp"

namespace privrec {

// Undirected preferential-attachment graph: a clique on the first
// edges_per_node nodes, then each new node links to edges_per_node distinct
// existing nodes chosen proportionally to current degree. Connected, with
// (nodes - m)*m + m*(m-1)/2 edges for m = edges_per_node. Deterministic per
// seed. Requires 1 <= edges_per_node < nodes.
Graph generate_synthetic(NodeId nodes, NodeId edges_per_node, std::uint64_t seed);

}  // namespace privrec
