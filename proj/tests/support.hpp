#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "cmj/tjoin.hpp"

namespace cmj::test {

inline Graft make_graft(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges,
                        std::initializer_list<VertexId> terminals) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return validate_graft(std::move(g), std::vector<VertexId>(terminals));
}

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

// Connected multigraph: random spanning tree plus extra edges (parallel
// edges allowed), terminals sampled with even parity.
inline Graft random_connected_graft(std::uint64_t seed, std::size_t max_n = 8, std::size_t max_m = 14) {
  std::mt19937_64 rng(seed);
  const std::size_t n = 1 + rng() % max_n;
  Graph g(n);
  for (VertexId v = 1; v < n; ++v) g.add_edge(static_cast<VertexId>(rng() % v), v);
  if (n >= 2 && max_m > n - 1) {
    const std::size_t extra = rng() % (max_m - (n - 1) + 1);
    for (std::size_t i = 0; i < extra; ++i) {
      const auto u = static_cast<VertexId>(rng() % n);
      auto v = static_cast<VertexId>(rng() % (n - 1));
      if (v >= u) ++v;
      g.add_edge(u, v);
    }
  }
  std::vector<char> in_t(n, 0);
  std::size_t count = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (rng() % 2 == 0) {
      in_t[v] = 1;
      ++count;
    }
  }
  if (count % 2 == 1) in_t[rng() % n] ^= 1;
  VertexSet terminals;
  for (VertexId v = 0; v < n; ++v) {
    if (in_t[v]) terminals.push_back(v);
  }
  return validate_graft(std::move(g), terminals);
}

}  // namespace cmj::test
