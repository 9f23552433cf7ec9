#include "cmj/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>

#include "cmj/error.hpp"

namespace cmj {

namespace {

using Mask = std::uint64_t;

EdgeSet edges_of(Mask mask) {
  EdgeSet out;
  while (mask != 0) {
    out.push_back(static_cast<EdgeId>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

void require_small(const Graph& graph, const char* what) {
  if (graph.vertex_count() > kOracleMaxVertices) {
    fail(ErrorKind::oracle_scale, std::string(what) + " supports at most " +
                                      std::to_string(kOracleMaxVertices) + " vertices, got " +
                                      std::to_string(graph.vertex_count()));
  }
}

}  // namespace

Join spanning_forest_join(const Graft& graft) {
  const Graph& g = graft.graph();
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexId> order;
  std::vector<EdgeId> parent_edge(g.vertex_count(), 0);
  std::vector<char> has_parent(g.vertex_count(), 0);
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      const VertexId v = order[head++];
      for (const Incidence& inc : g.incident(v)) {
        if (seen[inc.other]) continue;
        seen[inc.other] = 1;
        parent_edge[inc.other] = inc.edge;
        has_parent[inc.other] = 1;
        order.push_back(inc.other);
      }
    }
  }
  std::vector<char> need(g.vertex_count(), 0);
  for (VertexId v : graft.terminals()) need[v] = 1;
  Join join;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId v = *it;
    if (!need[v] || !has_parent[v]) continue;
    const EdgeId e = parent_edge[v];
    join.push_back(e);
    need[v] = 0;
    need[g.other_end(e, v)] ^= 1;
  }
  std::sort(join.begin(), join.end());
  return join;
}

bool is_connected_edge_set(const Graph& graph, std::span<const EdgeId> edges) {
  if (edges.empty()) return false;
  UnionFind uf(graph.vertex_count());
  std::size_t components = 0;
  std::vector<char> touched(graph.vertex_count(), 0);
  for (EdgeId e : edges) {
    const Edge& ed = graph.edge(e);
    for (VertexId v : {ed.u, ed.v}) {
      if (!touched[v]) {
        touched[v] = 1;
        ++components;
      }
    }
    if (uf.unite(ed.u, ed.v)) --components;
  }
  return components == 1;
}

OracleReport oracle_report(const Graft& graft) {
  const Graph& g = graft.graph();
  const std::size_t m = g.edge_count();
  const std::size_t c = connected_components(g).size();
  const std::size_t rank = m + c - g.vertex_count();
  const bool use_cycle_space = rank <= kOracleMaxCycleRank && m <= kOracleMaxEdgesCycleSpace;
  if (m > kOracleMaxEdges && !use_cycle_space) {
    fail(ErrorKind::oracle_scale, "oracle needs m <= " + std::to_string(kOracleMaxEdges) +
                                      " or cycle rank <= " + std::to_string(kOracleMaxCycleRank) +
                                      " (m = " + std::to_string(m) +
                                      ", rank = " + std::to_string(rank) + ")");
  }

  // Generators toggled by a Gray-code walk; `start` is the walk's origin.
  std::vector<Mask> generators;
  Mask start = 0;
  if (use_cycle_space) {
    for (EdgeId e : spanning_forest_join(graft)) start |= Mask{1} << e;
    // Fundamental cycles of a BFS spanning forest.
    std::vector<char> seen(g.vertex_count(), 0);
    std::vector<Mask> path_to_root(g.vertex_count(), 0);
    std::vector<char> tree_edge(m, 0);
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      std::vector<VertexId> queue{s};
      for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId v = queue[head];
        for (const Incidence& inc : g.incident(v)) {
          if (seen[inc.other]) continue;
          seen[inc.other] = 1;
          tree_edge[inc.edge] = 1;
          path_to_root[inc.other] = path_to_root[v] | (Mask{1} << inc.edge);
          queue.push_back(inc.other);
        }
      }
    }
    for (EdgeId e = 0; e < m; ++e) {
      if (tree_edge[e]) continue;
      const Edge& ed = g.edge(e);
      generators.push_back((path_to_root[ed.u] ^ path_to_root[ed.v]) | (Mask{1} << e));
    }
  } else {
    for (EdgeId e = 0; e < m; ++e) generators.push_back(Mask{1} << e);
  }

  std::vector<char> odd(g.vertex_count(), 0);
  std::size_t mismatched = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (graft.is_terminal(v)) ++mismatched;
  }
  auto toggle_edge = [&](EdgeId e) {
    for (VertexId v : {g.edge(e).u, g.edge(e).v}) {
      const bool was_ok = (odd[v] != 0) == graft.is_terminal(v);
      odd[v] ^= 1;
      if (was_ok) {
        ++mismatched;
      } else {
        --mismatched;
      }
    }
  };
  Mask current = 0;
  auto apply = [&](Mask delta) {
    for (EdgeId e : edges_of(delta)) toggle_edge(e);
    current ^= delta;
  };
  apply(start);

  std::size_t best = static_cast<std::size_t>(-1);
  std::vector<Mask> best_masks;
  auto consider = [&]() {
    if (mismatched != 0) return;
    const auto size = static_cast<std::size_t>(std::popcount(current));
    if (size < best) {
      best = size;
      best_masks.clear();
    }
    if (size == best) best_masks.push_back(current);
  };
  consider();
  const std::uint64_t steps = std::uint64_t{1} << generators.size();
  for (std::uint64_t i = 1; i < steps; ++i) {
    apply(generators[static_cast<std::size_t>(std::countr_zero(i))]);
    consider();
  }
  if (best_masks.empty()) fail(ErrorKind::internal, "oracle found no join of a validated graft");

  std::sort(best_masks.begin(), best_masks.end());
  OracleReport report;
  report.nu = best;
  std::vector<char> covered(g.vertex_count(), 0);
  for (Mask mask : best_masks) {
    Join join = edges_of(mask);
    if (is_connected_edge_set(g, join)) {
      report.has_connected = true;
      for (EdgeId e : join) covered[g.edge(e).u] = covered[g.edge(e).v] = 1;
    }
    report.min_joins.push_back(std::move(join));
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (covered[v]) report.coverable.push_back(v);
  }
  return report;
}

std::vector<EdgeSet> enumerate_circuits(const Graph& graph) {
  require_small(graph, "circuit enumeration");
  std::set<EdgeSet> found;
  const std::size_t n = graph.vertex_count();
  std::vector<char> on_path(n, 0);
  std::vector<EdgeId> path;

  // Simple paths from s through vertices larger than s, closed back to s.
  auto dfs = [&](auto&& self, VertexId s, VertexId v) -> void {
    for (const Incidence& inc : graph.incident(v)) {
      if (inc.other == s) {
        if (path.empty() || inc.edge == path.front()) continue;
        EdgeSet cycle = path;
        cycle.push_back(inc.edge);
        std::sort(cycle.begin(), cycle.end());
        found.insert(std::move(cycle));
        continue;
      }
      if (inc.other < s || on_path[inc.other]) continue;
      on_path[inc.other] = 1;
      path.push_back(inc.edge);
      self(self, s, inc.other);
      path.pop_back();
      on_path[inc.other] = 0;
    }
  };
  for (VertexId s = 0; s < n; ++s) {
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return {found.begin(), found.end()};
}

std::vector<EdgeSet> enumerate_paths(const Graph& graph, VertexId x, VertexId y) {
  require_small(graph, "path enumeration");
  check_vertices(graph, std::vector<VertexId>{x, y});
  if (x == y) return {EdgeSet{}};
  std::vector<EdgeSet> paths;
  std::vector<char> on_path(graph.vertex_count(), 0);
  std::vector<EdgeId> path;
  auto dfs = [&](auto&& self, VertexId v) -> void {
    if (v == y) {
      EdgeSet found = path;
      std::sort(found.begin(), found.end());
      paths.push_back(std::move(found));
      return;
    }
    for (const Incidence& inc : graph.incident(v)) {
      if (on_path[inc.other]) continue;
      on_path[inc.other] = 1;
      path.push_back(inc.edge);
      self(self, inc.other);
      path.pop_back();
      on_path[inc.other] = 0;
    }
  };
  on_path[x] = 1;
  dfs(dfs, x);
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace cmj
