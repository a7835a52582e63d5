#include "privrec/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace privrec {

namespace {

bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
  return std::binary_search(v.begin(), v.end(), x);
}

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
  v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  v.erase(it);
}

}  // namespace

void Graph::finish() {
  edge_count_ = 0;
  max_degree_ = 0;
  for (auto& adj : out_) {
    std::sort(adj.begin(), adj.end());
    edge_count_ += adj.size();
    max_degree_ = std::max(max_degree_, adj.size());
  }
  if (!directed_) edge_count_ /= 2;
  for (auto& adj : in_) std::sort(adj.begin(), adj.end());
}

Graph Graph::from_edges(NodeId node_count, bool directed,
                        const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Graph g;
  g.directed_ = directed;
  g.out_.resize(node_count);
  if (directed) g.in_.resize(node_count);
  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop not allowed");
    auto key = (!directed && u > v) ? std::pair{v, u} : std::pair{u, v};
    if (!seen.insert(key).second) throw std::invalid_argument("duplicate edge");
    g.out_[u].push_back(v);
    if (directed) {
      g.in_[v].push_back(u);
    } else {
      g.out_[v].push_back(u);
    }
  }
  g.finish();
  return g;
}

const std::vector<NodeId>& Graph::neighbors(NodeId v, Direction dir) const {
  check(v);
  switch (dir) {
    case Direction::Out:
      return out_[v];
    case Direction::In:
      return directed_ ? in_[v] : out_[v];
    case Direction::Undirected:
      if (directed_)
        throw std::invalid_argument("undirected neighbor query on a directed graph");
      return out_[v];
  }
  throw std::invalid_argument("bad direction");
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check(u);
  check(v);
  return sorted_contains(out_[u], v);
}

Graph Graph::apply_edit(const EdgeEdit& e) const {
  check(e.u);
  check(e.v);
  if (e.u == e.v) throw std::invalid_argument("self-loop edit");
  bool present = sorted_contains(out_[e.u], e.v);
  Graph g = *this;
  if (e.kind == EdgeEdit::Kind::Add) {
    if (present) throw std::invalid_argument("edge to add already exists");
    sorted_insert(g.out_[e.u], e.v);
    if (directed_) {
      sorted_insert(g.in_[e.v], e.u);
    } else {
      sorted_insert(g.out_[e.v], e.u);
    }
    ++g.edge_count_;
  } else {
    if (!present) throw std::invalid_argument("edge to remove does not exist");
    sorted_erase(g.out_[e.u], e.v);
    if (directed_) {
      sorted_erase(g.in_[e.v], e.u);
    } else {
      sorted_erase(g.out_[e.v], e.u);
    }
    --g.edge_count_;
  }
  g.max_degree_ = 0;
  for (const auto& adj : g.out_) g.max_degree_ = std::max(g.max_degree_, adj.size());
  return g;
}

bool Graph::operator==(const Graph& other) const {
  return directed_ == other.directed_ && out_ == other.out_ &&
         original_ids_ == other.original_ids_;
}

namespace {

std::int64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, "expected integer node id, got \"" + std::string(tok) + "\"");
  if (value < 0) throw ParseError(line_no, "negative node id");
  return value;
}

}  // namespace

LoadResult load_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ls(line.substr(start));
    std::string a, b, extra;
    ls >> a >> b;
    if (b.empty()) throw ParseError(line_no, "expected two node ids");
    if (ls >> extra) throw ParseError(line_no, "trailing token \"" + extra + "\"");
    raw.emplace_back(parse_id(a, line_no), parse_id(b, line_no));
  }
  if (raw.empty()) throw ParseError(line_no, "no edges in input");

  // Dense ids follow ascending original-id order.
  std::map<std::int64_t, NodeId> index;
  for (auto [a, b] : raw) {
    index.emplace(a, 0);
    index.emplace(b, 0);
  }
  NodeId next = 0;
  for (auto& [orig, dense] : index) dense = next++;

  LoadResult res;
  res.graph.directed_ = directed;
  res.graph.out_.resize(next);
  if (directed) res.graph.in_.resize(next);
  res.graph.original_ids_.reserve(next);
  for (const auto& [orig, dense] : index) res.graph.original_ids_.push_back(orig);

  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto [a, b] : raw) {
    NodeId u = index[a], v = index[b];
    if (u == v) {
      ++res.self_loops_dropped;
      continue;
    }
    auto key = (!directed && u > v) ? std::pair{v, u} : std::pair{u, v};
    if (!seen.insert(key).second) {
      ++res.duplicates_dropped;
      continue;
    }
    res.graph.out_[u].push_back(v);
    if (directed) {
      res.graph.in_[v].push_back(u);
    } else {
      res.graph.out_[v].push_back(u);
    }
  }
  res.graph.finish();
  return res;
}

LoadResult load_edge_list_file(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_edge_list(in, directed);
}

}  // namespace privrec
