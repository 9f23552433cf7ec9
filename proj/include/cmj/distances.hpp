#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cmj/tjoin.hpp"

namespace cmj {

// F-distances from a root. nullopt marks vertices outside the root's component.
struct DistanceMap {
  VertexId root = 0;
  std::vector<std::optional<std::int64_t>> dist;

  bool reachable(VertexId v) const { return dist.at(v).has_value(); }
  std::int64_t at(VertexId v) const;

  friend bool operator==(const DistanceMap&, const DistanceMap&) = default;
};

// Sum of +1 over edges outside the join and -1 over edges in it.
std::int64_t f_weight(std::span<const EdgeId> join, std::span<const EdgeId> edges);

// dist(r, x) = nu(G, T delta {r, x}) - nu(G, T) for every x in r's component.
// The join must be a minimum join of the graft (checked by size).
DistanceMap f_distances(const Graft& graft, std::span<const EdgeId> join, VertexId root);

// Same, computing a minimum join internally.
DistanceMap f_distances(const Graft& graft, VertexId root);

// Symmetric query; nullopt if x and y are in different components.
std::optional<std::int64_t> f_distance(const Graft& graft, std::span<const EdgeId> join,
                                       VertexId x, VertexId y);

inline constexpr std::size_t kMaxPathOracleVertices = 12;

// Minimum F-weight over all simple x-y paths by exhaustive enumeration.
std::optional<std::int64_t> shortest_path_weight_oracle(const Graft& graft,
                                                        std::span<const EdgeId> join,
                                                        VertexId x, VertexId y);

}  // namespace cmj
