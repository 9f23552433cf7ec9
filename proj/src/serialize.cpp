#include "cmj/serialize.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "cmj/error.hpp"

namespace cmj {

Json edges_to_json(const Graph& graph, std::span<const EdgeId> edges) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (EdgeId e : edges) {
    const Edge& ed = graph.edge(e);
    pairs.emplace_back(std::min(ed.u, ed.v), std::max(ed.u, ed.v));
  }
  std::sort(pairs.begin(), pairs.end());
  Json out = Json::array();
  for (const auto& [u, v] : pairs) out.push_back({u, v});
  return out;
}

Json to_json(const DistanceMap& map) {
  Json dist = Json::array();
  for (const auto& d : map.dist) dist.push_back(d ? Json(*d) : Json(nullptr));
  return {{"root", map.root}, {"dist", std::move(dist)}};
}

namespace {

template <typename T>
Json optional_json(const std::optional<T>& value) {
  return value ? Json(*value) : Json(nullptr);
}

}  // namespace

Json to_json(const DistanceDecomposition& dd) {
  Json components = Json::array();
  for (const Component& c : dd.components) {
    components.push_back({
        {"id", c.id},
        {"level", c.level},
        {"kind", to_string(c.kind)},
        {"vertices", c.vertices},
        {"a_set", c.a_set},
        {"d_set", c.d_set},
        {"is_cap", c.is_cap},
        {"beam", optional_json(c.beam)},
        {"f_root", optional_json(c.f_root)},
        {"q_children", c.q_children},
        {"d_children", c.d_children},
    });
  }
  Json dist = to_json(dd.distances)["dist"];
  return {{"root", dd.root},       {"interval", dd.interval},   {"components", std::move(components)},
          {"initial_id", dd.initial_id}, {"detached", dd.detached}, {"dist", std::move(dist)}};
}

Json to_json(const SeboReport& report) {
  Json violations = Json::array();
  for (const SeboViolation& v : report.violations) {
    violations.push_back({{"component", v.component}, {"check", v.check}, {"detail", v.detail}});
  }
  return {{"ok", report.ok()}, {"components_checked", report.components_checked},
          {"violations", std::move(violations)}};
}

Json to_json(const OracleReport& report, const Graph& graph) {
  Json joins = Json::array();
  for (const Join& j : report.min_joins) joins.push_back(edges_to_json(graph, j));
  Json ids = Json::array();
  for (const Join& j : report.min_joins) ids.push_back(j);
  return {{"nu", report.nu},
          {"min_joins", std::move(joins)},
          {"min_join_ids", std::move(ids)},
          {"has_connected", report.has_connected},
          {"coverable", report.coverable}};
}

Json to_json(const ConnectedJoinResult& result, const Graph& graph) {
  Json out = {{"answer", result.found ? "yes" : "no"}, {"root", optional_json(result.root)}};
  if (result.found) {
    out["join"] = edges_to_json(graph, result.join);
    out["join_ids"] = result.join;
    out["coverable"] = result.coverable;
  } else {
    out["stage"] = result.stage_tag();
    if (result.eligibility.component) out["component"] = *result.eligibility.component;
  }
  return out;
}

namespace {

Json edge_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back({e.u, e.v});
  return out;
}

Json primal_to_json(const PrimalSpec& spec) {
  Json parts = Json::array();
  for (const PrimalSpec& p : spec.parts) parts.push_back(primal_to_json(p));
  return {{"teeth", spec.rake.teeth},
          {"vertex_additions", spec.rake.vertex_additions},
          {"edge_additions", edge_list(spec.rake.edge_additions)},
          {"parts", std::move(parts)},
          {"attachments", spec.attachments}};
}

std::vector<Edge> edges_from(const Json& json) {
  std::vector<Edge> out;
  for (const Json& pair : json) {
    if (!pair.is_array() || pair.size() != 2) fail(ErrorKind::parse, "recipe edge must be a pair");
    out.push_back({pair[0].get<VertexId>(), pair[1].get<VertexId>()});
  }
  return out;
}

PrimalSpec primal_from_json(const Json& json) {
  PrimalSpec spec;
  spec.rake.teeth = json.at("teeth").get<std::size_t>();
  spec.rake.vertex_additions = json.at("vertex_additions").get<std::vector<VertexSet>>();
  spec.rake.edge_additions = edges_from(json.at("edge_additions"));
  for (const Json& part : json.at("parts")) spec.parts.push_back(primal_from_json(part));
  spec.attachments = json.at("attachments").get<std::vector<std::vector<std::size_t>>>();
  return spec;
}

}  // namespace

Json to_json(const ConstructionRecipe& recipe) {
  Json out = {{"kind", to_string(recipe.kind)},
              {"seed", recipe.seed},
              {"depth", recipe.depth},
              {"steps", primal_to_json(recipe.primal)}};
  if (recipe.kind == RecipeKind::tailed) {
    Json bridges = Json::array();
    for (const auto& [a, h] : recipe.bridges) bridges.push_back({a, h});
    out["tail"] = {{"vertices", recipe.tail_vertices},
                   {"edges", edge_list(recipe.tail_edges)},
                   {"bridges", std::move(bridges)}};
  }
  return out;
}

ConstructionRecipe recipe_from_json(const Json& json) {
  try {
    ConstructionRecipe recipe;
    const auto kind = recipe_kind_from_string(json.at("kind").get<std::string>());
    if (!kind) fail(ErrorKind::parse, "unknown recipe kind '" + json.at("kind").get<std::string>() + "'");
    recipe.kind = *kind;
    recipe.seed = json.at("seed").get<std::uint64_t>();
    recipe.depth = json.at("depth").get<int>();
    recipe.primal = primal_from_json(json.at("steps"));
    if (recipe.kind == RecipeKind::tailed) {
      const Json& tail = json.at("tail");
      recipe.tail_vertices = tail.at("vertices").get<std::size_t>();
      recipe.tail_edges = edges_from(tail.at("edges"));
      for (const Edge& e : edges_from(tail.at("bridges"))) recipe.bridges.emplace_back(e.u, e.v);
    }
    return recipe;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse, std::string("malformed recipe: ") + e.what());
  }
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

}  // namespace cmj
