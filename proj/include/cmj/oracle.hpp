#pragma once

#include <cstddef>
#include <vector>

#include "cmj/tjoin.hpp"

namespace cmj {

// Exhaustive ground truth for small grafts.
struct OracleReport {
  std::size_t nu = 0;
  std::vector<Join> min_joins;   // in increasing order of their edge bitmask
  bool has_connected = false;
  VertexSet coverable;           // vertices covered by some connected minimum join
};

inline constexpr std::size_t kOracleMaxEdges = 20;
inline constexpr std::size_t kOracleMaxCycleRank = 14;
inline constexpr std::size_t kOracleMaxEdgesCycleSpace = 64;
inline constexpr std::size_t kOracleMaxVertices = 12;

// Enumerates every join (raw subsets, or base join + cycle space when the
// cycle rank is small) and keeps the minimum ones.
OracleReport oracle_report(const Graft& graft);

// True iff the edge set is nonempty and induces a connected subgraph.
bool is_connected_edge_set(const Graph& graph, std::span<const EdgeId> edges);

// All circuits (edge sets of connected 2-regular subgraphs), n <= 12.
std::vector<EdgeSet> enumerate_circuits(const Graph& graph);

// All simple x-y paths as edge sets, n <= 12. x == y yields one empty path.
std::vector<EdgeSet> enumerate_paths(const Graph& graph, VertexId x, VertexId y);

// A join built by peeling leaves of a spanning forest; independent of the
// matching reduction.
Join spanning_forest_join(const Graft& graft);

}  // namespace cmj
