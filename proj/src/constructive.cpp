#include "cmj/constructive.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "cmj/distances.hpp"
#include "cmj/error.hpp"

namespace cmj {

const char* to_string(RecipeKind kind) noexcept {
  switch (kind) {
    case RecipeKind::rake: return "rake";
    case RecipeKind::primal: return "primal";
    case RecipeKind::tailed: return "tailed";
  }
  return "unknown";
}

std::optional<RecipeKind> recipe_kind_from_string(std::string_view text) noexcept {
  if (text == "rake") return RecipeKind::rake;
  if (text == "primal") return RecipeKind::primal;
  if (text == "tailed") return RecipeKind::tailed;
  return std::nullopt;
}

bool is_rake(const Graft& graft, VertexId r, std::span<const VertexId> teeth) {
  const Graph& g = graft.graph();
  if (!g.has_vertex(r)) return false;
  for (VertexId b : teeth) {
    if (!g.has_vertex(b)) return false;
  }
  const VertexSet b = normalized({teeth.begin(), teeth.end()});
  if (b.size() != teeth.size() || contains(b, r)) return false;
  std::vector<char> in_b(g.vertex_count(), 0);
  for (VertexId v : b) {
    if (!graft.is_terminal(v)) return false;
    in_b[v] = 1;
  }
  for (const Edge& e : g.edges()) {
    if (in_b[e.u] && in_b[e.v]) return false;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (in_b[v]) continue;
    const auto inc = g.incident(v);
    if (std::none_of(inc.begin(), inc.end(), [&](const Incidence& i) { return in_b[i.other] != 0; })) {
      return false;
    }
  }
  for (VertexId v : b) {
    if (!g.adjacent(r, v)) return false;
  }
  VertexSet expected = b;
  if (b.size() % 2 == 1) expected = normalized([&] { auto x = b; x.push_back(r); return x; }());
  return graft.terminals() == expected;
}

bool is_primal(const Graft& graft, VertexId r) {
  const DistanceMap d = f_distances(graft, r);
  return std::all_of(d.dist.begin(), d.dist.end(), [](const auto& x) { return x && *x <= 0; });
}

GluingResult gluing_sum(const Graft& base, std::span<const VertexId> glued,
                        std::span<const EdgeId> chosen, std::span<const GluingPart> parts) {
  const Graph& g0 = base.graph();
  check_vertices(g0, glued);
  check_edges(g0, chosen);
  if (glued.empty()) fail(ErrorKind::structural_input, "gluing sum needs at least one glued vertex");
  if (chosen.size() != glued.size() || parts.size() != glued.size()) {
    fail(ErrorKind::structural_input, "gluing sum needs one chosen edge and one part per glued vertex");
  }
  if (!std::is_sorted(glued.begin(), glued.end()) ||
      std::adjacent_find(glued.begin(), glued.end()) != glued.end()) {
    fail(ErrorKind::structural_input, "glued vertices must be sorted and distinct");
  }
  if (connected_components(g0).size() != 1) {
    fail(ErrorKind::structural_input, "gluing sum base graft must be connected");
  }
  std::vector<std::size_t> slot(g0.vertex_count(), glued.size());
  for (std::size_t i = 0; i < glued.size(); ++i) {
    if (!base.is_terminal(glued[i])) {
      fail(ErrorKind::structural_input, "glued vertex " + std::to_string(glued[i]) + " is not a terminal");
    }
    slot[glued[i]] = i;
  }
  for (const Edge& e : g0.edges()) {
    if (slot[e.u] != glued.size() && slot[e.v] != glued.size()) {
      fail(ErrorKind::structural_input, "glued vertices are not stable");
    }
  }

  GluingResult out;
  out.base_map.assign(g0.vertex_count(), std::nullopt);
  VertexId next = 0;
  for (VertexId v = 0; v < g0.vertex_count(); ++v) {
    if (slot[v] == glued.size()) out.base_map[v] = next++;
  }
  out.part_maps.resize(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const GluingPart& p = parts[i];
    if (!contains(p.a_set, p.root)) {
      fail(ErrorKind::structural_input, "part root " + std::to_string(p.root) + " is not in its A-set");
    }
    check_vertices(p.graft.graph(), p.a_set);
    const std::size_t degree = g0.degree(glued[i]);
    if (p.attach.size() != degree) {
      fail(ErrorKind::structural_input, "part " + std::to_string(i) + " maps " + std::to_string(p.attach.size()) +
                                            " edges but the glued vertex has degree " + std::to_string(degree));
    }
    for (VertexId v = 0; v < p.graft.vertex_count(); ++v) out.part_maps[i].push_back(next++);
  }

  Graph g(next);
  std::vector<char> odd(next, 0);
  for (VertexId v : base.terminals()) {
    if (out.base_map[v]) odd[*out.base_map[v]] ^= 1;
  }
  std::vector<std::size_t> seen_at(glued.size(), 0);
  for (EdgeId e = 0; e < g0.edge_count(); ++e) {
    const Edge& ed = g0.edge(e);
    VertexId ends[2] = {ed.u, ed.v};
    VertexId mapped[2];
    for (int k = 0; k < 2; ++k) {
      const std::size_t i = slot[ends[k]];
      if (i == glued.size()) {
        mapped[k] = *out.base_map[ends[k]];
        continue;
      }
      const GluingPart& p = parts[i];
      const VertexId target = p.attach[seen_at[i]++];
      if (!contains(p.a_set, target)) {
        fail(ErrorKind::structural_input, "attachment " + std::to_string(target) + " is outside the part's A-set");
      }
      if (e == chosen[i] && target != p.root) {
        fail(ErrorKind::structural_input, "chosen edge must attach to the part root");
      }
      mapped[k] = out.part_maps[i][target];
    }
    g.add_edge(mapped[0], mapped[1]);
  }
  for (std::size_t i = 0; i < glued.size(); ++i) {
    const Edge& ed = g0.edge(chosen[i]);
    if (ed.u != glued[i] && ed.v != glued[i]) {
      fail(ErrorKind::structural_input, "chosen edge " + std::to_string(chosen[i]) + " does not meet glued vertex " +
                                            std::to_string(glued[i]));
    }
    const GluingPart& p = parts[i];
    for (const Edge& e : p.graft.graph().edges()) g.add_edge(out.part_maps[i][e.u], out.part_maps[i][e.v]);
    for (VertexId v : p.graft.terminals()) odd[out.part_maps[i][v]] ^= 1;
    odd[out.part_maps[i][p.root]] ^= 1;
  }
  VertexSet terminals;
  for (VertexId v = 0; v < next; ++v) {
    if (odd[v]) terminals.push_back(v);
  }
  out.graft = validate_graft(std::move(g), terminals);
  return out;
}

Graft build_rake(const RakeSpec& spec) {
  const std::size_t k = spec.teeth;
  Graph g(k + 1 + spec.vertex_additions.size());
  for (VertexId b = 1; b <= k; ++b) g.add_edge(0, b);
  VertexId x = static_cast<VertexId>(k + 1);
  for (const VertexSet& nbrs : spec.vertex_additions) {
    if (nbrs.empty()) fail(ErrorKind::structural_input, "vertex addition needs at least one tooth");
    for (VertexId b : nbrs) {
      if (b < 1 || b > k) fail(ErrorKind::structural_input, "vertex addition target " + std::to_string(b) + " is not a tooth");
      g.add_edge(x, b);
    }
    ++x;
  }
  for (const Edge& e : spec.edge_additions) {
    const bool tooth = (e.u >= 1 && e.u <= k) || (e.v >= 1 && e.v <= k);
    if (tooth || e.u == e.v || !g.has_vertex(e.u) || !g.has_vertex(e.v)) {
      fail(ErrorKind::structural_input, "edge addition must join two distinct non-tooth vertices");
    }
    g.add_edge(e.u, e.v);
  }
  VertexSet terminals;
  if (k % 2 == 1) terminals.push_back(0);
  for (VertexId b = 1; b <= k; ++b) terminals.push_back(b);
  return validate_graft(std::move(g), terminals);
}

PrimalWitness build_primal(const PrimalSpec& spec) {
  Graft rake = build_rake(spec.rake);
  const std::size_t k = spec.rake.teeth;
  if (spec.parts.empty()) {
    PrimalWitness w{std::move(rake), 0, {}, {}};
    w.a_set.push_back(0);
    for (EdgeId e = 0; e < k; ++e) w.join.push_back(e);
    for (VertexId v = static_cast<VertexId>(k + 1); v < w.graft.vertex_count(); ++v) w.a_set.push_back(v);
    return w;
  }
  if (spec.parts.size() != k || spec.attachments.size() != k) {
    fail(ErrorKind::structural_input, "primal spec needs one part and one attachment list per tooth");
  }
  VertexSet glued;
  EdgeSet chosen;
  std::vector<GluingPart> parts;
  std::vector<Join> part_joins;
  for (VertexId b = 1; b <= k; ++b) {
    glued.push_back(b);
    chosen.push_back(b - 1);
    PrimalWitness child = build_primal(spec.parts[b - 1]);
    part_joins.push_back(std::move(child.join));
    GluingPart part{std::move(child.graft), std::move(child.a_set), child.root, {}};
    for (std::size_t index : spec.attachments[b - 1]) {
      if (index >= part.a_set.size()) fail(ErrorKind::structural_input, "attachment index out of range");
      part.attach.push_back(part.a_set[index]);
    }
    parts.push_back(std::move(part));
  }
  GluingResult glue = gluing_sum(rake, glued, chosen, parts);
  PrimalWitness w{std::move(glue.graft), *glue.base_map[0], {}, {}};
  for (VertexId v = 0; v < rake.vertex_count(); ++v) {
    if (glue.base_map[v]) w.a_set.push_back(*glue.base_map[v]);
  }
  // Base edges keep their ids; part edges follow part by part.
  for (EdgeId e = 0; e < k; ++e) w.join.push_back(e);
  auto offset = static_cast<EdgeId>(rake.edge_count());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (EdgeId e : part_joins[i]) w.join.push_back(e + offset);
    offset += static_cast<EdgeId>(parts[i].graft.edge_count());
  }
  std::sort(w.join.begin(), w.join.end());
  return w;
}

Graft attach_tail(const PrimalWitness& witness, const Graph& tail,
                  std::span<const std::pair<VertexId, VertexId>> bridges) {
  const std::size_t n = witness.graft.vertex_count();
  Graph g(n + tail.vertex_count());
  for (const Edge& e : witness.graft.graph().edges()) g.add_edge(e.u, e.v);
  const auto offset = static_cast<VertexId>(n);
  for (const Edge& e : tail.edges()) g.add_edge(e.u + offset, e.v + offset);
  for (const auto& [a, h] : bridges) {
    if (!contains(witness.a_set, a)) {
      fail(ErrorKind::structural_input, "bridge endpoint " + std::to_string(a) + " is outside the A-set");
    }
    if (!tail.has_vertex(h)) fail(ErrorKind::structural_input, "bridge endpoint " + std::to_string(h) + " is outside the tail");
    g.add_edge(a, h + offset);
  }
  return validate_graft(std::move(g), witness.graft.terminals());
}

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

RakeSpec random_rake(Rng& rng, std::size_t teeth, std::size_t extra_vertices, std::size_t extra_edges) {
  RakeSpec spec;
  spec.teeth = teeth;
  for (std::size_t i = 0; i < extra_vertices; ++i) {
    VertexSet nbrs;
    for (VertexId b = 1; b <= teeth; ++b) {
      if (rng.below(2) == 1) nbrs.push_back(b);
    }
    if (nbrs.empty()) nbrs.push_back(static_cast<VertexId>(1 + rng.below(teeth)));
    spec.vertex_additions.push_back(std::move(nbrs));
  }
  VertexSet free_vertices{0};
  for (std::size_t i = 0; i < extra_vertices; ++i) free_vertices.push_back(static_cast<VertexId>(teeth + 1 + i));
  if (free_vertices.size() < 2) return spec;
  for (std::size_t i = 0; i < extra_edges; ++i) {
    const std::size_t a = rng.below(free_vertices.size());
    std::size_t b = rng.below(free_vertices.size() - 1);
    if (b >= a) ++b;
    spec.edge_additions.push_back({free_vertices[a], free_vertices[b]});
  }
  return spec;
}

PrimalSpec random_primal(Rng& rng, int depth, const PrimalParams& params) {
  PrimalSpec spec;
  spec.rake = random_rake(rng, rng.between(1, std::max<std::size_t>(params.max_teeth, 1)),
                          rng.between(0, params.max_extra_vertices), rng.between(0, params.max_extra_edges));
  if (depth <= 0) return spec;
  const Graft rake = build_rake(spec.rake);
  for (VertexId b = 1; b <= spec.rake.teeth; ++b) {
    PrimalSpec part = random_primal(rng, depth - 1, params);
    const std::size_t a_size = build_primal(part).a_set.size();
    std::vector<std::size_t> attach;
    for (const Incidence& inc : rake.graph().incident(b)) {
      // The star edge r-b has id b - 1 and must land on the part root (A index 0).
      attach.push_back(inc.edge == b - 1 ? 0 : rng.below(a_size));
    }
    spec.parts.push_back(std::move(part));
    spec.attachments.push_back(std::move(attach));
  }
  return spec;
}

void check_depth(int depth) {
  if (depth < 0 || depth > kMaxPrimalDepth) {
    fail(ErrorKind::contract, "depth must lie in [0, " + std::to_string(kMaxPrimalDepth) + "], got " +
                                  std::to_string(depth));
  }
}

}  // namespace

GeneratedRake gen_rake(std::size_t teeth, std::size_t extra_vertices, std::size_t extra_edges,
                       std::uint64_t seed) {
  if (teeth == 0) fail(ErrorKind::contract, "a generated rake needs at least one tooth");
  Rng rng(seed);
  GeneratedRake out;
  out.recipe.kind = RecipeKind::rake;
  out.recipe.seed = seed;
  out.recipe.primal.rake = random_rake(rng, teeth, extra_vertices, extra_edges);
  out.graft = build_rake(out.recipe.primal.rake);
  for (VertexId b = 1; b <= teeth; ++b) out.teeth.push_back(b);
  return out;
}

GeneratedRake gen_rake(const PrimalParams& params, std::uint64_t seed) {
  Rng rng(seed);
  GeneratedRake out;
  out.recipe.kind = RecipeKind::rake;
  out.recipe.seed = seed;
  out.recipe.primal = random_primal(rng, 0, params);
  out.graft = build_rake(out.recipe.primal.rake);
  for (VertexId b = 1; b <= out.recipe.primal.rake.teeth; ++b) out.teeth.push_back(b);
  return out;
}

GeneratedPrimal gen_primal(int depth, const PrimalParams& params, std::uint64_t seed) {
  check_depth(depth);
  Rng rng(seed);
  GeneratedPrimal out;
  out.recipe.kind = RecipeKind::primal;
  out.recipe.seed = seed;
  out.recipe.depth = depth;
  out.recipe.primal = random_primal(rng, depth, params);
  out.witness = build_primal(out.recipe.primal);
  return out;
}

GeneratedTailed gen_tailed(int depth, const PrimalParams& params, std::uint64_t seed) {
  check_depth(depth);
  Rng rng(seed);
  GeneratedTailed out;
  out.recipe.kind = RecipeKind::tailed;
  out.recipe.seed = seed;
  out.recipe.depth = depth;
  out.recipe.primal = random_primal(rng, depth, params);
  out.witness = build_primal(out.recipe.primal);
  const std::size_t h = rng.between(1, std::max<std::size_t>(params.max_tail_vertices, 1));
  out.recipe.tail_vertices = h;
  if (h >= 2) {
    const std::size_t edges = rng.between(0, h);
    for (std::size_t i = 0; i < edges; ++i) {
      const auto a = static_cast<VertexId>(rng.below(h));
      auto b = static_cast<VertexId>(rng.below(h - 1));
      if (b >= a) ++b;
      out.recipe.tail_edges.push_back({a, b});
    }
  }
  const std::size_t bridges = rng.between(1, 2);
  for (std::size_t i = 0; i < bridges; ++i) {
    const VertexId a = out.witness.a_set[rng.below(out.witness.a_set.size())];
    out.recipe.bridges.emplace_back(a, static_cast<VertexId>(rng.below(h)));
  }
  out.graft = replay(out.recipe);
  return out;
}

Graft replay(const ConstructionRecipe& recipe) {
  switch (recipe.kind) {
    case RecipeKind::rake: return build_rake(recipe.primal.rake);
    case RecipeKind::primal: return build_primal(recipe.primal).graft;
    case RecipeKind::tailed: {
      const PrimalWitness w = build_primal(recipe.primal);
      Graph tail(recipe.tail_vertices);
      for (const Edge& e : recipe.tail_edges) {
        if (!tail.has_vertex(e.u) || !tail.has_vertex(e.v) || e.u == e.v) {
          fail(ErrorKind::structural_input, "tail edge must join two distinct tail vertices");
        }
        tail.add_edge(e.u, e.v);
      }
      return attach_tail(w, tail, recipe.bridges);
    }
  }
  fail(ErrorKind::contract, "unknown recipe kind");
}

}  // namespace cmj
