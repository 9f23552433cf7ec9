#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmj/distances.hpp"

namespace cmj {

enum class ComponentKind { layer, q };

const char* to_string(ComponentKind kind) noexcept;

// A layer component (component of G[V<=i]) or a Q-component (component of
// G[V<=i] - E[level i]) of the distance decomposition.
struct Component {
  std::size_t id = 0;
  int level = 0;
  ComponentKind kind = ComponentKind::layer;
  VertexSet vertices;
  VertexSet a_set;  // vertices at exactly `level`
  VertexSet d_set;  // vertices strictly below `level`
  bool is_cap = false;
  std::optional<EdgeId> beam;
  std::optional<VertexId> f_root;
  std::vector<std::size_t> q_children;  // layer kind only: Q-components at this level inside it
  std::vector<std::size_t> d_children;  // layer components one level down inside it
};

struct DistanceDecomposition {
  VertexId root = 0;
  DistanceMap distances;
  std::vector<int> interval;               // sorted, contiguous, contains 0
  std::vector<Component> components;       // indexed by id
  std::size_t initial_id = 0;
  VertexSet detached;                      // vertices outside the root's component

  const Component& component(std::size_t id) const { return components.at(id); }
  const Component& initial() const { return components.at(initial_id); }
};

// Builds the decomposition of the root's connected component. Throws
// theorem_violation if a non-cap component is not left by exactly one join edge.
DistanceDecomposition distance_decomposition(const Graft& graft, std::span<const EdgeId> join,
                                             VertexId root);

struct SeboViolation {
  std::size_t component;
  std::string check;   // beam-count | induced-join | projection | factor-critical | strong-comb | tooth-degree
  std::string detail;
};

struct SeboReport {
  std::vector<SeboViolation> violations;
  std::size_t components_checked = 0;

  bool ok() const noexcept { return violations.empty(); }
};

// Re-derives the beam, induced-join, projection, Q-contraction and
// D-contraction properties for every component and reports each failure.
SeboReport verify_sebo_invariants(const Graft& graft, std::span<const EdgeId> join,
                                  const DistanceDecomposition& decomposition);

// H - v has a perfect matching for every vertex v.
bool is_factor_critical(const Graph& graph);

// B stable, N(B) = V - B, r outside B, dist(r, .) = -1 on B and 0 elsewhere.
bool is_strong_comb(const Graft& graft, VertexId root, std::span<const VertexId> teeth);

// (G, T)_F[X]: the subgraph induced by X with terminals at odd F[X]-degree.
struct InducedGraft {
  Graft graft;
  Subgraph map;
  Join join;  // F[X] in the subgraph's edge ids
};

InducedGraft induced_graft(const Graft& graft, std::span<const EdgeId> join,
                           std::span<const VertexId> vertices);

// (G, T) / family with terminal [X] iff |X cap T| is odd.
struct ContractedGraft {
  Graft graft;
  Contraction map;
};

ContractedGraft contract_graft(const Graft& graft, std::span<const VertexSet> family);

}  // namespace cmj
