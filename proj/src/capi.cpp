#include "cmj/cmj.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "cmj/connected_join.hpp"
#include "cmj/constructive.hpp"
#include "cmj/decomposition.hpp"
#include "cmj/error.hpp"
#include "cmj/graft_io.hpp"
#include "cmj/oracle.hpp"
#include "cmj/serialize.hpp"

struct cmj_graft {
  cmj::Graft graft;
  std::size_t stripped_loops = 0;
};

struct cmj_result {
  cmj::ConnectedJoinResult result;
  std::string json;
  std::string stage;
};

namespace {

thread_local std::string last_error;

cmj_status status_of(cmj::ErrorKind kind) {
  switch (kind) {
    case cmj::ErrorKind::structural_input: return CMJ_ERR_STRUCTURAL_INPUT;
    case cmj::ErrorKind::no_join: return CMJ_ERR_NO_JOIN;
    case cmj::ErrorKind::not_minimum_join: return CMJ_ERR_NOT_MINIMUM_JOIN;
    case cmj::ErrorKind::theorem_violation: return CMJ_ERR_THEOREM_VIOLATION;
    case cmj::ErrorKind::oracle_scale: return CMJ_ERR_ORACLE_SCALE;
    case cmj::ErrorKind::parse: return CMJ_ERR_PARSE;
    case cmj::ErrorKind::contract: return CMJ_ERR_CONTRACT;
    case cmj::ErrorKind::internal: return CMJ_ERR_INTERNAL;
  }
  return CMJ_ERR_INTERNAL;
}

template <typename F>
cmj_status guarded(F&& body) {
  try {
    body();
    return CMJ_OK;
  } catch (const cmj::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CMJ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CMJ_ERR_INTERNAL;
  }
}

cmj_status null_argument(const char* name) {
  last_error = std::string("null argument: ") + name;
  return CMJ_ERR_NULL_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

template <typename T, typename S>
T* copy_array(const std::vector<S>& values) {
  T* out = static_cast<T*>(std::malloc(values.empty() ? 1 : values.size() * sizeof(T)));
  if (out == nullptr) throw std::bad_alloc();
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<T>(values[i]);
  return out;
}

cmj_status finish_check(cmj::ConnectedJoinResult result, const cmj::Graph& graph, cmj_result** out) {
  auto* r = new cmj_result{std::move(result), {}, {}};
  r->json = cmj::dump(cmj::to_json(r->result, graph));
  r->stage = r->result.stage_tag();
  *out = r;
  return CMJ_OK;
}

}  // namespace

extern "C" {

const char* cmj_last_error(void) { return last_error.c_str(); }

const char* cmj_status_string(cmj_status status) {
  switch (status) {
    case CMJ_OK: return "ok";
    case CMJ_ERR_STRUCTURAL_INPUT: return "structural-input";
    case CMJ_ERR_NO_JOIN: return "no-join";
    case CMJ_ERR_NOT_MINIMUM_JOIN: return "not-minimum-join";
    case CMJ_ERR_THEOREM_VIOLATION: return "theorem-violation";
    case CMJ_ERR_ORACLE_SCALE: return "oracle-scale";
    case CMJ_ERR_PARSE: return "parse";
    case CMJ_ERR_CONTRACT: return "contract";
    case CMJ_ERR_INTERNAL: return "internal";
    case CMJ_ERR_NULL_ARGUMENT: return "null-argument";
  }
  return "unknown";
}

cmj_status cmj_graft_parse(const char* text, size_t length, cmj_graft** out) {
  if (text == nullptr && length > 0) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    cmj::ParsedGraft parsed = cmj::parse_graft(std::string_view(text == nullptr ? "" : text, length));
    *out = new cmj_graft{std::move(parsed.graft), parsed.stripped_loops};
  });
}

cmj_status cmj_graft_create(size_t vertex_count, const uint32_t* edges, size_t edge_count,
                            const uint32_t* terminals, size_t terminal_count, cmj_graft** out) {
  if (edges == nullptr && edge_count > 0) return null_argument("edges");
  if (terminals == nullptr && terminal_count > 0) return null_argument("terminals");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    cmj::Graph g(vertex_count);
    for (std::size_t i = 0; i < edge_count; ++i) g.add_edge(edges[2 * i], edges[2 * i + 1]);
    std::vector<cmj::VertexId> t(terminals, terminals + terminal_count);
    cmj::check_vertices(g, t);
    const std::size_t loops = g.stripped_loops();
    t = cmj::normalized(std::move(t));
    if (t.size() != terminal_count) cmj::fail(cmj::ErrorKind::structural_input, "duplicate terminal");
    *out = new cmj_graft{cmj::validate_graft(std::move(g), t), loops};
  });
}

void cmj_graft_free(cmj_graft* graft) { delete graft; }

size_t cmj_graft_vertex_count(const cmj_graft* graft) { return graft ? graft->graft.vertex_count() : 0; }
size_t cmj_graft_edge_count(const cmj_graft* graft) { return graft ? graft->graft.edge_count() : 0; }
size_t cmj_graft_terminal_count(const cmj_graft* graft) {
  return graft ? graft->graft.terminals().size() : 0;
}
size_t cmj_graft_stripped_loops(const cmj_graft* graft) { return graft ? graft->stripped_loops : 0; }

const uint32_t* cmj_graft_terminals(const cmj_graft* graft, size_t* count) {
  if (count) *count = graft ? graft->graft.terminals().size() : 0;
  return graft ? graft->graft.terminals().data() : nullptr;
}

cmj_status cmj_graft_edge(const cmj_graft* graft, uint32_t edge, uint32_t* u, uint32_t* v) {
  if (graft == nullptr) return null_argument("graft");
  if (u == nullptr || v == nullptr) return null_argument("u/v");
  return guarded([&] {
    cmj::check_edges(graft->graft.graph(), std::vector<cmj::EdgeId>{edge});
    *u = graft->graft.graph().edge(edge).u;
    *v = graft->graft.graph().edge(edge).v;
  });
}

cmj_status cmj_graft_format(const cmj_graft* graft, char** out) {
  if (graft == nullptr) return null_argument("graft");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = copy_string(cmj::format_graft(graft->graft)); });
}

cmj_status cmj_check(const cmj_graft* graft, cmj_result** out) {
  if (graft == nullptr) return null_argument("graft");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { finish_check(cmj::connected_minimum_join(graft->graft), graft->graft.graph(), out); });
}

cmj_status cmj_check_rooted(const cmj_graft* graft, uint32_t root, cmj_result** out) {
  if (graft == nullptr) return null_argument("graft");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    finish_check(cmj::connected_minimum_join(graft->graft, root), graft->graft.graph(), out);
  });
}

int cmj_result_found(const cmj_result* result) { return result && result->result.found ? 1 : 0; }

const uint32_t* cmj_result_join(const cmj_result* result, size_t* count) {
  if (count) *count = result ? result->result.join.size() : 0;
  return result ? result->result.join.data() : nullptr;
}

const uint32_t* cmj_result_coverable(const cmj_result* result, size_t* count) {
  if (count) *count = result ? result->result.coverable.size() : 0;
  return result ? result->result.coverable.data() : nullptr;
}

const char* cmj_result_stage(const cmj_result* result) { return result ? result->stage.c_str() : ""; }

cmj_status cmj_result_json(const cmj_result* result, char** out) {
  if (result == nullptr) return null_argument("result");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = copy_string(result->json); });
}

void cmj_result_free(cmj_result* result) { delete result; }

cmj_status cmj_minimum_join(const cmj_graft* graft, uint32_t** edges, size_t* count) {
  if (graft == nullptr) return null_argument("graft");
  if (edges == nullptr || count == nullptr) return null_argument("edges/count");
  return guarded([&] {
    const cmj::Join join = cmj::minimum_join(graft->graft);
    *edges = copy_array<uint32_t>(join);
    *count = join.size();
  });
}

cmj_status cmj_distances(const cmj_graft* graft, uint32_t root, int64_t** dist,
                         unsigned char** reachable, size_t* count) {
  if (graft == nullptr) return null_argument("graft");
  if (dist == nullptr || reachable == nullptr || count == nullptr) return null_argument("dist/reachable/count");
  return guarded([&] {
    const cmj::DistanceMap map = cmj::f_distances(graft->graft, cmj::minimum_join(graft->graft), root);
    std::vector<int64_t> values;
    std::vector<unsigned char> flags;
    for (const auto& d : map.dist) {
      values.push_back(d.value_or(0));
      flags.push_back(d ? 1 : 0);
    }
    int64_t* v = copy_array<int64_t>(values);
    try {
      *reachable = copy_array<unsigned char>(flags);
    } catch (...) {
      std::free(v);
      throw;
    }
    *dist = v;
    *count = values.size();
  });
}

cmj_status cmj_decompose_json(const cmj_graft* graft, uint32_t root, char** out) {
  if (graft == nullptr) return null_argument("graft");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const cmj::Join f = cmj::minimum_join(graft->graft);
    *out = copy_string(cmj::dump(cmj::to_json(cmj::distance_decomposition(graft->graft, f, root))));
  });
}

cmj_status cmj_verify(const cmj_graft* graft, uint32_t root, int* clean, char** report_json) {
  if (graft == nullptr) return null_argument("graft");
  if (clean == nullptr || report_json == nullptr) return null_argument("clean/report_json");
  return guarded([&] {
    const cmj::Join f = cmj::minimum_join(graft->graft);
    const cmj::DistanceDecomposition dd = cmj::distance_decomposition(graft->graft, f, root);
    const cmj::SeboReport report = cmj::verify_sebo_invariants(graft->graft, f, dd);
    *report_json = copy_string(cmj::dump(cmj::to_json(report)));
    *clean = report.ok() ? 1 : 0;
  });
}

cmj_status cmj_oracle_json(const cmj_graft* graft, char** out) {
  if (graft == nullptr) return null_argument("graft");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = copy_string(cmj::dump(cmj::to_json(cmj::oracle_report(graft->graft), graft->graft.graph())));
  });
}

cmj_status cmj_generate(cmj_generator kind, uint64_t seed, int depth, cmj_graft** graft, char** recipe_json) {
  if (graft == nullptr || recipe_json == nullptr) return null_argument("graft/recipe_json");
  return guarded([&] {
    const cmj::PrimalParams params;
    cmj::Graft g;
    cmj::ConstructionRecipe recipe;
    switch (kind) {
      case CMJ_GEN_RAKE: {
        auto r = cmj::gen_rake(params, seed);
        g = std::move(r.graft);
        recipe = std::move(r.recipe);
        break;
      }
      case CMJ_GEN_PRIMAL: {
        auto r = cmj::gen_primal(depth, params, seed);
        g = std::move(r.witness.graft);
        recipe = std::move(r.recipe);
        break;
      }
      case CMJ_GEN_TAILED: {
        auto r = cmj::gen_tailed(depth, params, seed);
        g = std::move(r.graft);
        recipe = std::move(r.recipe);
        break;
      }
      default: cmj::fail(cmj::ErrorKind::contract, "unknown generator kind");
    }
    char* text = copy_string(cmj::dump(cmj::to_json(recipe)));
    *graft = new cmj_graft{std::move(g), 0};
    *recipe_json = text;
  });
}

cmj_status cmj_replay(const char* recipe_json, cmj_graft** graft) {
  if (recipe_json == nullptr) return null_argument("recipe_json");
  if (graft == nullptr) return null_argument("graft");
  return guarded([&] {
    const cmj::Json doc = cmj::Json::parse(recipe_json, nullptr, false);
    if (doc.is_discarded()) cmj::fail(cmj::ErrorKind::parse, "recipe is not valid JSON");
    *graft = new cmj_graft{cmj::replay(cmj::recipe_from_json(doc)), 0};
  });
}

void cmj_string_free(char* text) { std::free(text); }
void cmj_array_free(void* array) { std::free(array); }

}  // extern "C"
