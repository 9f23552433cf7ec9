#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "cmj/connected_join.hpp"
#include "cmj/constructive.hpp"
#include "cmj/decomposition.hpp"
#include "cmj/oracle.hpp"

namespace cmj {

using Json = nlohmann::json;

// Edges as [u, v] pairs with u <= v, sorted.
Json edges_to_json(const Graph& graph, std::span<const EdgeId> edges);

Json to_json(const DistanceMap& map);
Json to_json(const DistanceDecomposition& dd);
Json to_json(const SeboReport& report);
Json to_json(const OracleReport& report, const Graph& graph);
Json to_json(const ConnectedJoinResult& result, const Graph& graph);
Json to_json(const ConstructionRecipe& recipe);

// Throws parse errors on malformed documents.
ConstructionRecipe recipe_from_json(const Json& json);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& json);

}  // namespace cmj
