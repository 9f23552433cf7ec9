#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cmj {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// Sorted, duplicate-free vertex / edge identifier lists.
using VertexSet = std::vector<VertexId>;
using EdgeSet = std::vector<EdgeId>;

struct Edge {
  VertexId u;
  VertexId v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  EdgeId edge;
  VertexId other;
};

// Undirected multigraph on vertices [0, n). Edge identifiers are dense and
// follow insertion order; loops are dropped on insertion and counted.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  // Returns the new edge's id, or nullopt when the edge was a loop.
  std::optional<EdgeId> add_edge(VertexId u, VertexId v);
  VertexId add_vertex();

  std::size_t vertex_count() const noexcept { return incidence_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t stripped_loops() const noexcept { return stripped_loops_; }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  // Incidences of v in increasing edge-id order.
  std::span<const Incidence> incident(VertexId v) const { return incidence_.at(v); }
  std::size_t degree(VertexId v) const { return incidence_.at(v).size(); }

  VertexId other_end(EdgeId e, VertexId v) const;
  bool has_vertex(VertexId v) const noexcept { return v < vertex_count(); }
  bool adjacent(VertexId u, VertexId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
  std::size_t stripped_loops_ = 0;
};

// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0);

  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);
  bool same(std::size_t a, std::size_t b) { return find(a) == find(b); }
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Components of G[vertex_set] - removed_edges (whole graph when vertex_set is
// absent), each sorted, listed by smallest member.
std::vector<VertexSet> connected_components(
    const Graph& graph,
    std::optional<std::span<const VertexId>> vertex_set = std::nullopt,
    std::span<const EdgeId> removed_edges = {});

// delta(X): edges with exactly one endpoint in X.
EdgeSet cut(const Graph& graph, std::span<const VertexId> vertices);

// E[X]: edges with both endpoints in X.
EdgeSet spanned_edges(const Graph& graph, std::span<const VertexId> vertices);

struct Contraction {
  Graph graph;
  std::vector<VertexId> vertex_map;            // old vertex -> new vertex
  std::vector<std::optional<EdgeId>> edge_map;  // old edge -> new edge, nullopt if it vanished
  std::vector<VertexId> family_vertex;          // family member index -> new vertex
};

// G / {X_1, ..., X_k}. New ids are handed out by scanning old vertices in
// increasing order; a family member gets its id at its smallest vertex.
Contraction contract(const Graph& graph, std::span<const VertexSet> family);

struct Subgraph {
  Graph graph;
  std::vector<VertexId> to_parent_vertex;       // new -> old
  std::vector<EdgeId> to_parent_edge;           // new -> old
  std::vector<std::optional<VertexId>> from_parent_vertex;  // old -> new
};

// G[X], preserving the relative order of vertices and edges.
Subgraph induced_subgraph(const Graph& graph, std::span<const VertexId> vertices);

// Throws structural_input unless every entry is a valid vertex.
void check_vertices(const Graph& graph, std::span<const VertexId> vertices);
void check_edges(const Graph& graph, std::span<const EdgeId> edges);

// Sorts and removes duplicates.
VertexSet normalized(std::vector<VertexId> vertices);

bool contains(std::span<const VertexId> sorted, VertexId v);

}  // namespace cmj
