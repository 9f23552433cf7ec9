#include <doctest.h>

#include "cmj/error.hpp"
#include "cmj/graph.hpp"
#include "support.hpp"

using namespace cmj;
using cmj::test::make_graph;

TEST_CASE("connected components") {
  const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(connected_components(p3) == std::vector<VertexSet>{{0, 1, 2}});
  const VertexSet ends{0, 2};
  CHECK(connected_components(p3, std::span<const VertexId>(ends)) == std::vector<VertexSet>{{0}, {2}});
  const Graph p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  const EdgeSet removed{1};
  CHECK(connected_components(p4, std::nullopt, removed) == std::vector<VertexSet>{{0, 1}, {2, 3}});
}

TEST_CASE("cut") {
  const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(cut(p3, VertexSet{1}) == EdgeSet{0, 1});
  CHECK(cut(p3, VertexSet{0, 1, 2}).empty());
  const Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(cut(star, VertexSet{0}) == EdgeSet{0, 1, 2});
}

TEST_CASE("contract") {
  const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  const std::vector<VertexSet> tail{{1, 2}};
  const Contraction c = contract(p3, tail);
  CHECK(c.graph.vertex_count() == 2);
  CHECK(c.graph.edge_count() == 1);
  CHECK(c.vertex_map[1] == c.vertex_map[2]);
  CHECK_FALSE(c.edge_map[1].has_value());

  const Graph triangle = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const std::vector<VertexSet> pair{{0, 1}};
  const Contraction t = contract(triangle, pair);
  CHECK(t.graph.vertex_count() == 2);
  CHECK(t.graph.edge_count() == 2);
  const VertexId x = t.family_vertex[0];
  const VertexId two = t.vertex_map[2];
  for (const Edge& e : t.graph.edges()) CHECK(((e.u == x && e.v == two) || (e.u == two && e.v == x)));

  const Contraction id = contract(triangle, {});
  CHECK(id.graph == triangle);
}

TEST_CASE("contract rejects overlapping families") {
  const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  const std::vector<VertexSet> overlap{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(contract(p3, overlap), Error);
}

TEST_CASE("loops are stripped and counted") {
  Graph g(2);
  CHECK_FALSE(g.add_edge(1, 1).has_value());
  CHECK(g.add_edge(0, 1).has_value());
  CHECK(g.stripped_loops() == 1);
  CHECK(g.edge_count() == 1);
}

TEST_CASE("parallel edges are kept") {
  const Graph g = make_graph(2, {{0, 1}, {1, 0}});
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(0) == 2);
}
