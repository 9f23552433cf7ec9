#include "cmj/tjoin.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "cmj/error.hpp"

namespace cmj {

Graft validate_graft(Graph graph, std::span<const VertexId> terminals) {
  check_vertices(graph, terminals);
  Graft graft;
  graft.terminals_ = normalized({terminals.begin(), terminals.end()});
  graft.is_terminal_.assign(graph.vertex_count(), 0);
  for (VertexId v : graft.terminals_) graft.is_terminal_[v] = 1;
  for (const VertexSet& component : connected_components(graph)) {
    std::size_t count = 0;
    for (VertexId v : component) count += graft.is_terminal_[v];
    if (count % 2 != 0) {
      fail(ErrorKind::no_join, "component containing vertex " + std::to_string(component.front()) +
                                   " has an odd number (" + std::to_string(count) +
                                   ") of terminals; no join exists");
    }
  }
  graft.graph_ = std::move(graph);
  return graft;
}

bool is_join(const Graft& graft, std::span<const EdgeId> edges) {
  const Graph& g = graft.graph();
  check_edges(g, edges);
  std::vector<char> parity(g.vertex_count(), 0);
  std::vector<char> used(g.edge_count(), 0);
  for (EdgeId e : edges) {
    if (used[e]) return false;  // a multiset is not an edge set
    used[e] = 1;
    parity[g.edge(e).u] ^= 1;
    parity[g.edge(e).v] ^= 1;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (parity[v] != (graft.is_terminal(v) ? 1 : 0)) return false;
  }
  return true;
}

VertexSet symmetric_difference(std::span<const VertexId> a, std::span<const VertexId> b) {
  VertexSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

BfsTree bfs_tree(const Graph& graph, VertexId source) {
  BfsTree tree;
  tree.dist.assign(graph.vertex_count(), -1);
  tree.parent_edge.assign(graph.vertex_count(), 0);
  tree.has_parent.assign(graph.vertex_count(), 0);
  std::deque<VertexId> queue{source};
  tree.dist[source] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (const Incidence& inc : graph.incident(v)) {
      if (tree.dist[inc.other] != -1) continue;
      tree.dist[inc.other] = tree.dist[v] + 1;
      tree.parent_edge[inc.other] = inc.edge;
      tree.has_parent[inc.other] = 1;
      queue.push_back(inc.other);
    }
  }
  return tree;
}

Join minimum_join(const Graft& graft) {
  const Graph& g = graft.graph();
  std::vector<char> in_join(g.edge_count(), 0);
  for (const VertexSet& component : connected_components(g)) {
    VertexSet terminals;
    for (VertexId v : component) {
      if (graft.is_terminal(v)) terminals.push_back(v);
    }
    if (terminals.empty()) continue;
    std::vector<BfsTree> trees;
    trees.reserve(terminals.size());
    for (VertexId t : terminals) trees.push_back(bfs_tree(g, t));
    WeightMatrix weights(terminals.size());
    for (std::size_t a = 0; a < terminals.size(); ++a) {
      for (std::size_t b = a + 1; b < terminals.size(); ++b) {
        weights.set(a, b, trees[a].dist[terminals[b]]);
      }
    }
    const PerfectMatching matching = min_weight_perfect_matching(weights);
    for (const auto& [a, b] : matching.pairs) {
      const BfsTree& tree = trees[a];
      VertexId v = terminals[b];
      while (tree.has_parent[v]) {
        const EdgeId e = tree.parent_edge[v];
        in_join[e] ^= 1;
        v = g.other_end(e, v);
      }
    }
  }
  Join join;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in_join[e]) join.push_back(e);
  }
  return join;
}

std::size_t nu(const Graft& graft) {
  JoinSizeSolver solver(graft.graph());
  std::size_t total = 0;
  for (const VertexSet& component : connected_components(graft.graph())) {
    VertexSet terminals;
    for (VertexId v : component) {
      if (graft.is_terminal(v)) terminals.push_back(v);
    }
    total += static_cast<std::size_t>(solver.join_size(terminals));
  }
  return total;
}

JoinSizeSolver::JoinSizeSolver(const Graph& graph)
    : graph_(graph), rows_(graph.vertex_count()) {}

const std::vector<std::int64_t>& JoinSizeSolver::distances_from(VertexId source) {
  auto& row = rows_.at(source);
  if (row.empty() && graph_.vertex_count() > 0) row = bfs_tree(graph_, source).dist;
  return row;
}

std::int64_t JoinSizeSolver::join_size(std::span<const VertexId> terminals) {
  if (terminals.empty()) return 0;
  check_vertices(graph_, terminals);
  // Group terminals by component using reachability from each group's first member.
  std::vector<char> grouped(terminals.size(), 0);
  std::int64_t total = 0;
  for (std::size_t first = 0; first < terminals.size(); ++first) {
    if (grouped[first]) continue;
    const auto& row = distances_from(terminals[first]);
    std::vector<std::size_t> group;
    for (std::size_t i = first; i < terminals.size(); ++i) {
      if (!grouped[i] && row[terminals[i]] >= 0) {
        grouped[i] = 1;
        group.push_back(i);
      }
    }
    if (group.size() % 2 != 0) {
      fail(ErrorKind::no_join, "odd number of terminals in the component of vertex " +
                                   std::to_string(terminals[first]));
    }
    WeightMatrix weights(group.size());
    for (std::size_t a = 0; a < group.size(); ++a) {
      const auto& ra = distances_from(terminals[group[a]]);
      for (std::size_t b = a + 1; b < group.size(); ++b) weights.set(a, b, ra[terminals[group[b]]]);
    }
    total += min_perfect_matching_weight(weights);
  }
  return total;
}

}  // namespace cmj
