#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace privrec {

using NodeId = std::uint32_t;

enum class Direction { Out, In, Undirected };

struct EdgeEdit {
  enum class Kind { Add, Remove };
  Kind kind;
  NodeId u;
  NodeId v;
};

inline EdgeEdit add_edge(NodeId u, NodeId v) { return {EdgeEdit::Kind::Add, u, v}; }
inline EdgeEdit remove_edge(NodeId u, NodeId v) { return {EdgeEdit::Kind::Remove, u, v}; }

// Thrown by load_edge_list with the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class Graph;
struct LoadResult;
LoadResult load_edge_list(std::istream& in, bool directed);

// Simple graph over dense node ids [0, node_count). No self-loops, no
// duplicate edges. Immutable after construction; apply_edit returns a copy,
// so a Graph can be shared across threads without locking.
class Graph {
 public:
  // edges are (u, v) pairs over ids already in [0, node_count). For an
  // undirected graph each pair is one edge regardless of orientation.
  // Throws std::invalid_argument on self-loops, duplicates, or ids out of range.
  static Graph from_edges(NodeId node_count, bool directed,
                          const std::vector<std::pair<NodeId, NodeId>>& edges);

  NodeId node_count() const { return static_cast<NodeId>(out_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  bool directed() const { return directed_; }

  // Sorted ascending. Direction::Undirected is only valid on undirected
  // graphs; Out/In coincide there.
  const std::vector<NodeId>& neighbors(NodeId v, Direction dir = Direction::Undirected) const;

  // Out-degree on directed graphs, plain degree otherwise.
  std::size_t degree(NodeId v) const { return check(v), out_[v].size(); }
  std::size_t max_degree() const { return max_degree_; }

  bool has_edge(NodeId u, NodeId v) const;  // directed: u -> v

  // Throws std::invalid_argument when the edit is a self-loop, adds an edge
  // that exists, or removes one that does not.
  Graph apply_edit(const EdgeEdit& e) const;

  // Node id from the input file this graph was loaded from; identity for
  // graphs built any other way.
  std::int64_t original_id(NodeId v) const {
    check(v);
    return original_ids_.empty() ? static_cast<std::int64_t>(v) : original_ids_[v];
  }

  bool operator==(const Graph& other) const;

 private:
  friend LoadResult load_edge_list(std::istream&, bool);

  void check(NodeId v) const {
    if (v >= out_.size()) throw std::out_of_range("node id " + std::to_string(v) + " out of range");
  }
  void finish();  // sorts adjacency, computes edge_count_ and max_degree_

  bool directed_ = false;
  std::vector<std::vector<NodeId>> out_;
  std::vector<std::vector<NodeId>> in_;  // directed graphs only
  std::vector<std::int64_t> original_ids_;
  std::size_t edge_count_ = 0;
  std::size_t max_degree_ = 0;
};

struct LoadResult {
  Graph graph;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

// load_edge_list (declared above Graph) reads whitespace-separated id pairs,
// one edge per line. Lines whose first non-blank character is '#' are
// comments; blank lines are skipped. Node ids are arbitrary nonnegative
// integers and get re-indexed to dense ids in ascending original-id order.
// Self-loops and repeated edges (either orientation when undirected) are
// dropped and counted. Throws ParseError on malformed lines and on input
// with no edges at all.
LoadResult load_edge_list_file(const std::string& path, bool directed);

}  // namespace privrec
