#include "cmj/distances.hpp"

#include <algorithm>
#include <string>

#include "cmj/error.hpp"
#include "cmj/oracle.hpp"

namespace cmj {

std::int64_t DistanceMap::at(VertexId v) const {
  const auto& d = dist.at(v);
  if (!d) {
    fail(ErrorKind::contract, "vertex " + std::to_string(v) + " is unreachable from root " +
                                  std::to_string(root));
  }
  return *d;
}

std::int64_t f_weight(std::span<const EdgeId> join, std::span<const EdgeId> edges) {
  std::int64_t total = 0;
  for (EdgeId e : edges) total += std::binary_search(join.begin(), join.end(), e) ? -1 : 1;
  return total;
}

namespace {

void require_minimum(const Graft& graft, std::span<const EdgeId> join, JoinSizeSolver& solver) {
  check_edges(graft.graph(), join);
  if (!std::is_sorted(join.begin(), join.end())) {
    fail(ErrorKind::contract, "join edge list must be sorted");
  }
  if (!is_join(graft, join)) fail(ErrorKind::not_minimum_join, "edge set is not a join of the graft");
  std::int64_t size = 0;
  for (const VertexSet& component : connected_components(graft.graph())) {
    VertexSet terminals;
    for (VertexId v : component) {
      if (graft.is_terminal(v)) terminals.push_back(v);
    }
    size += solver.join_size(terminals);
  }
  if (static_cast<std::int64_t>(join.size()) != size) {
    fail(ErrorKind::not_minimum_join, "join has " + std::to_string(join.size()) +
                                          " edges but a minimum join has " + std::to_string(size));
  }
}

DistanceMap distances_by_join_difference(const Graft& graft, VertexId root, JoinSizeSolver& solver) {
  const Graph& g = graft.graph();
  DistanceMap map;
  map.root = root;
  map.dist.assign(g.vertex_count(), std::nullopt);
  const std::vector<std::int64_t> hops = solver.distances_from(root);
  VertexSet terminals;
  for (VertexId v : graft.terminals()) {
    if (hops[v] >= 0) terminals.push_back(v);
  }
  const std::int64_t base = solver.join_size(terminals);
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    if (hops[x] < 0) continue;
    if (x == root) {
      map.dist[x] = 0;
      continue;
    }
    const VertexSet pair = normalized({root, x});
    const VertexSet shifted = symmetric_difference(terminals, pair);
    map.dist[x] = solver.join_size(shifted) - base;
    if (!graft.is_terminal(x)) solver.forget(x);
  }
  return map;
}

}  // namespace

DistanceMap f_distances(const Graft& graft, std::span<const EdgeId> join, VertexId root) {
  check_vertices(graft.graph(), std::span<const VertexId>(&root, 1));
  JoinSizeSolver solver(graft.graph());
  require_minimum(graft, join, solver);
  return distances_by_join_difference(graft, root, solver);
}

DistanceMap f_distances(const Graft& graft, VertexId root) {
  check_vertices(graft.graph(), std::span<const VertexId>(&root, 1));
  JoinSizeSolver solver(graft.graph());
  return distances_by_join_difference(graft, root, solver);
}

std::optional<std::int64_t> f_distance(const Graft& graft, std::span<const EdgeId> join,
                                       VertexId x, VertexId y) {
  check_vertices(graft.graph(), std::span<const VertexId>(&y, 1));
  return f_distances(graft, join, x).dist[y];
}

std::optional<std::int64_t> shortest_path_weight_oracle(const Graft& graft,
                                                        std::span<const EdgeId> join,
                                                        VertexId x, VertexId y) {
  if (graft.vertex_count() > kMaxPathOracleVertices) {
    fail(ErrorKind::oracle_scale, "path oracle supports at most " +
                                      std::to_string(kMaxPathOracleVertices) + " vertices");
  }
  std::optional<std::int64_t> best;
  for (const EdgeSet& path : enumerate_paths(graft.graph(), x, y)) {
    const std::int64_t w = f_weight(join, path);
    if (!best || w < *best) best = w;
  }
  return best;
}

}  // namespace cmj
