#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cmj/graph.hpp"
#include "cmj/matching.hpp"

namespace cmj {

// Edge set with odd degree exactly at the terminals; kept sorted.
using Join = EdgeSet;

// A graph with a terminal set T such that every connected component holds an
// even number of terminals. Only obtainable through validate_graft.
class Graft {
 public:
  Graft() = default;

  const Graph& graph() const noexcept { return graph_; }
  const VertexSet& terminals() const noexcept { return terminals_; }
  bool is_terminal(VertexId v) const { return is_terminal_.at(v) != 0; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  friend bool operator==(const Graft& a, const Graft& b) {
    return a.graph_ == b.graph_ && a.terminals_ == b.terminals_;
  }

 private:
  friend Graft validate_graft(Graph graph, std::span<const VertexId> terminals);

  Graph graph_;
  VertexSet terminals_;
  std::vector<char> is_terminal_;
};

// Throws no_join naming the first component with an odd terminal count.
Graft validate_graft(Graph graph, std::span<const VertexId> terminals);

bool is_join(const Graft& graft, std::span<const EdgeId> edges);

// Minimum-cardinality join via BFS hop distances between terminals and a
// minimum-weight perfect matching per component.
Join minimum_join(const Graft& graft);

std::size_t nu(const Graft& graft);

// T delta X for sorted sets.
VertexSet symmetric_difference(std::span<const VertexId> a, std::span<const VertexId> b);

// Answers repeated nu(G, T') queries on one graph by caching BFS rows.
class JoinSizeSolver {
 public:
  explicit JoinSizeSolver(const Graph& graph);

  // nu(G, terminals). Throws no_join if some component gets an odd count.
  std::int64_t join_size(std::span<const VertexId> terminals);

  // Hop distances from source; -1 for unreachable vertices.
  const std::vector<std::int64_t>& distances_from(VertexId source);

  // Drops the cached row of source.
  void forget(VertexId source) { rows_.at(source) = {}; }

 private:
  const Graph& graph_;
  std::vector<std::vector<std::int64_t>> rows_;
};

// Breadth-first hop distances and parent edges; incidences are scanned in
// edge-id order so the tree is the lexicographically first one.
struct BfsTree {
  std::vector<std::int64_t> dist;  // -1 when unreachable
  std::vector<EdgeId> parent_edge;
  std::vector<char> has_parent;
};

BfsTree bfs_tree(const Graph& graph, VertexId source);

}  // namespace cmj
