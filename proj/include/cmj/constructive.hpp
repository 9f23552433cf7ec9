#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "cmj/tjoin.hpp"

namespace cmj {

// True iff B is a stable subset of T with N(B) = V - B, r is outside B and
// adjacent to every tooth, and T = B + r for odd |B|, T = B for even |B|.
bool is_rake(const Graft& graft, VertexId r, std::span<const VertexId> teeth);

// All F-distances from r are <= 0 (and every vertex is reachable).
bool is_primal(const Graft& graft, VertexId r);

// Rake built from a star with head 0 and teeth 1..teeth, then vertex
// additions (new vertex joined to the listed teeth) and edge additions
// (pairs of non-tooth vertices), in that order.
struct RakeSpec {
  std::size_t teeth = 0;
  std::vector<VertexSet> vertex_additions;
  std::vector<Edge> edge_additions;

  friend bool operator==(const RakeSpec&, const RakeSpec&) = default;
};

// A rake, and when `parts` is nonempty one part glued onto every tooth.
// attachments[b - 1][j] is the index, within the part's sorted A-set, of the
// vertex receiving the j-th edge at tooth b (edge-id order).
struct PrimalSpec {
  RakeSpec rake;
  std::vector<PrimalSpec> parts;
  std::vector<std::vector<std::size_t>> attachments;

  friend bool operator==(const PrimalSpec&, const PrimalSpec&) = default;
};

enum class RecipeKind { rake, primal, tailed };

const char* to_string(RecipeKind kind) noexcept;
std::optional<RecipeKind> recipe_kind_from_string(std::string_view text) noexcept;

struct ConstructionRecipe {
  RecipeKind kind = RecipeKind::rake;
  std::uint64_t seed = 0;
  int depth = 0;
  PrimalSpec primal;
  // Tailed only: tail graph on tail_vertices vertices and bridges (A-vertex, tail vertex).
  std::size_t tail_vertices = 0;
  std::vector<Edge> tail_edges;
  std::vector<std::pair<VertexId, VertexId>> bridges;

  friend bool operator==(const ConstructionRecipe&, const ConstructionRecipe&) = default;
};

struct PrimalWitness {
  Graft graft;
  VertexId root = 0;
  VertexSet a_set;
  Join join;  // the connected minimum join covering root given by the construction
};

struct GluingPart {
  Graft graft;
  VertexSet a_set;
  VertexId root = 0;
  // Target in a_set for every edge of delta(s), listed in increasing edge id.
  std::vector<VertexId> attach;
};

struct GluingResult {
  Graft graft;
  std::vector<std::optional<VertexId>> base_map;  // base vertex -> new vertex, nullopt on S
  std::vector<std::vector<VertexId>> part_maps;   // per part: part vertex -> new vertex
};

// Base vertices outside S come first, then each part in the order of S.
// Base edges keep their order (rewired), followed by each part's edges.
GluingResult gluing_sum(const Graft& base, std::span<const VertexId> glued,
                        std::span<const EdgeId> chosen, std::span<const GluingPart> parts);

Graft build_rake(const RakeSpec& spec);
PrimalWitness build_primal(const PrimalSpec& spec);

// Witness vertices keep their ids; tail vertices follow; edges are witness,
// tail, then bridges. Bridges must start in the witness's A-set.
Graft attach_tail(const PrimalWitness& witness, const Graph& tail,
                  std::span<const std::pair<VertexId, VertexId>> bridges);

struct PrimalParams {
  std::size_t max_teeth = 4;
  std::size_t max_extra_vertices = 2;
  std::size_t max_extra_edges = 2;
  std::size_t max_tail_vertices = 3;
};

inline constexpr int kMaxPrimalDepth = 4;

struct GeneratedRake {
  Graft graft;
  VertexId root = 0;
  VertexSet teeth;
  ConstructionRecipe recipe;
};

struct GeneratedPrimal {
  PrimalWitness witness;
  ConstructionRecipe recipe;
};

struct GeneratedTailed {
  Graft graft;
  PrimalWitness witness;
  ConstructionRecipe recipe;
};

GeneratedRake gen_rake(std::size_t teeth, std::size_t extra_vertices, std::size_t extra_edges,
                       std::uint64_t seed);
// Tooth and addition counts drawn from the seed within the params' bounds.
GeneratedRake gen_rake(const PrimalParams& params, std::uint64_t seed);
GeneratedPrimal gen_primal(int depth, const PrimalParams& params, std::uint64_t seed);
GeneratedTailed gen_tailed(int depth, const PrimalParams& params, std::uint64_t seed);

// Rebuilds the graft a recipe describes.
Graft replay(const ConstructionRecipe& recipe);

}  // namespace cmj
