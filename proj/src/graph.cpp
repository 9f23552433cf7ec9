#include "cmj/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cmj/error.hpp"

namespace cmj {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::structural_input: return "structural-input";
    case ErrorKind::no_join: return "no-join";
    case ErrorKind::not_minimum_join: return "not-minimum-join";
    case ErrorKind::theorem_violation: return "theorem-violation";
    case ErrorKind::oracle_scale: return "oracle-scale";
    case ErrorKind::parse: return "parse";
    case ErrorKind::contract: return "contract";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Graph::Graph(std::size_t vertex_count) : incidence_(vertex_count) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges)
    : incidence_(vertex_count) {
  edges_.reserve(edges.size());
  for (const Edge& e : edges) add_edge(e.u, e.v);
}

std::optional<EdgeId> Graph::add_edge(VertexId u, VertexId v) {
  if (!has_vertex(u) || !has_vertex(v)) {
    fail(ErrorKind::structural_input,
         "edge (" + std::to_string(u) + ", " + std::to_string(v) +
             ") references a vertex outside [0, " + std::to_string(vertex_count()) + ")");
  }
  if (u == v) {
    ++stripped_loops_;
    return std::nullopt;
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v});
  incidence_[u].push_back({id, v});
  incidence_[v].push_back({id, u});
  return id;
}

VertexId Graph::add_vertex() {
  incidence_.emplace_back();
  return static_cast<VertexId>(incidence_.size() - 1);
}

VertexId Graph::other_end(EdgeId e, VertexId v) const {
  const Edge& ed = edge(e);
  if (ed.u == v) return ed.v;
  if (ed.v == v) return ed.u;
  fail(ErrorKind::structural_input,
       "vertex " + std::to_string(v) + " is not an end of edge " + std::to_string(e));
}

bool Graph::adjacent(VertexId u, VertexId v) const {
  const auto& inc = incident(u);
  return std::any_of(inc.begin(), inc.end(), [v](const Incidence& i) { return i.other == v; });
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

void check_vertices(const Graph& graph, std::span<const VertexId> vertices) {
  for (VertexId v : vertices) {
    if (!graph.has_vertex(v)) {
      fail(ErrorKind::structural_input,
           "vertex " + std::to_string(v) + " outside [0, " +
               std::to_string(graph.vertex_count()) + ")");
    }
  }
}

void check_edges(const Graph& graph, std::span<const EdgeId> edges) {
  for (EdgeId e : edges) {
    if (e >= graph.edge_count()) {
      fail(ErrorKind::structural_input,
           "edge " + std::to_string(e) + " outside [0, " +
               std::to_string(graph.edge_count()) + ")");
    }
  }
}

VertexSet normalized(std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool contains(std::span<const VertexId> sorted, VertexId v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

namespace {

std::vector<char> membership(std::size_t n, std::span<const VertexId> vertices) {
  std::vector<char> in(n, 0);
  for (VertexId v : vertices) in[v] = 1;
  return in;
}

}  // namespace

std::vector<VertexSet> connected_components(const Graph& graph,
                                            std::optional<std::span<const VertexId>> vertex_set,
                                            std::span<const EdgeId> removed_edges) {
  const std::size_t n = graph.vertex_count();
  std::vector<char> active(n, 1);
  if (vertex_set) {
    check_vertices(graph, *vertex_set);
    active = membership(n, *vertex_set);
  }
  check_edges(graph, removed_edges);
  std::vector<char> removed(graph.edge_count(), 0);
  for (EdgeId e : removed_edges) removed[e] = 1;

  std::vector<VertexSet> result;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (!active[s] || seen[s]) continue;
    VertexSet component;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (const Incidence& inc : graph.incident(v)) {
        if (removed[inc.edge] || !active[inc.other] || seen[inc.other]) continue;
        seen[inc.other] = 1;
        stack.push_back(inc.other);
      }
    }
    std::sort(component.begin(), component.end());
    result.push_back(std::move(component));
  }
  return result;
}

EdgeSet cut(const Graph& graph, std::span<const VertexId> vertices) {
  check_vertices(graph, vertices);
  const auto in = membership(graph.vertex_count(), vertices);
  EdgeSet result;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    if (in[ed.u] != in[ed.v]) result.push_back(e);
  }
  return result;
}

EdgeSet spanned_edges(const Graph& graph, std::span<const VertexId> vertices) {
  check_vertices(graph, vertices);
  const auto in = membership(graph.vertex_count(), vertices);
  EdgeSet result;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    if (in[ed.u] && in[ed.v]) result.push_back(e);
  }
  return result;
}

Contraction contract(const Graph& graph, std::span<const VertexSet> family) {
  const std::size_t n = graph.vertex_count();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> member_of(n, kNone);
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].empty()) fail(ErrorKind::structural_input, "contraction family has an empty member");
    check_vertices(graph, family[i]);
    for (VertexId v : family[i]) {
      if (member_of[v] != kNone) {
        fail(ErrorKind::structural_input,
             "contraction family members overlap at vertex " + std::to_string(v));
      }
      member_of[v] = i;
    }
  }

  Contraction result;
  result.vertex_map.assign(n, 0);
  result.family_vertex.assign(family.size(), 0);
  std::vector<char> assigned(family.size(), 0);
  VertexId next = 0;
  for (VertexId v = 0; v < n; ++v) {
    const std::size_t m = member_of[v];
    if (m == kNone) {
      result.vertex_map[v] = next++;
    } else {
      if (!assigned[m]) {
        assigned[m] = 1;
        result.family_vertex[m] = next++;
      }
      result.vertex_map[v] = result.family_vertex[m];
    }
  }

  result.graph = Graph(next);
  result.edge_map.assign(graph.edge_count(), std::nullopt);
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    const VertexId a = result.vertex_map[ed.u];
    const VertexId b = result.vertex_map[ed.v];
    if (a == b) continue;
    result.edge_map[e] = result.graph.add_edge(a, b);
  }
  return result;
}

Subgraph induced_subgraph(const Graph& graph, std::span<const VertexId> vertices) {
  check_vertices(graph, vertices);
  Subgraph sub;
  sub.from_parent_vertex.assign(graph.vertex_count(), std::nullopt);
  VertexSet sorted = normalized({vertices.begin(), vertices.end()});
  for (VertexId v : sorted) {
    sub.from_parent_vertex[v] = static_cast<VertexId>(sub.to_parent_vertex.size());
    sub.to_parent_vertex.push_back(v);
  }
  sub.graph = Graph(sorted.size());
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    const Edge& ed = graph.edge(e);
    const auto a = sub.from_parent_vertex[ed.u];
    const auto b = sub.from_parent_vertex[ed.v];
    if (!a || !b) continue;
    sub.graph.add_edge(*a, *b);
    sub.to_parent_edge.push_back(e);
  }
  return sub;
}

}  // namespace cmj
