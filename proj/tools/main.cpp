#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmj/cmj.h"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

struct CliFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraftDeleter {
  void operator()(cmj_graft* g) const { cmj_graft_free(g); }
};
struct ResultDeleter {
  void operator()(cmj_result* r) const { cmj_result_free(r); }
};
using GraftPtr = std::unique_ptr<cmj_graft, GraftDeleter>;
using ResultPtr = std::unique_ptr<cmj_result, ResultDeleter>;

void check(cmj_status status) {
  if (status != CMJ_OK) throw CliFailure(std::string(cmj_status_string(status)) + ": " + cmj_last_error());
}

std::string take_string(char* text) {
  std::string out(text);
  cmj_string_free(text);
  return out;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliFailure("cannot write '" + path + "'");
  out << text;
}

GraftPtr load_graft(const std::string& path) {
  const std::string text = read_input(path);
  cmj_graft* g = nullptr;
  check(cmj_graft_parse(text.data(), text.size(), &g));
  GraftPtr graft(g);
  if (const std::size_t loops = cmj_graft_stripped_loops(g); loops > 0) {
    std::cerr << "warning: stripped " << loops << " loop" << (loops == 1 ? "" : "s") << "\n";
  }
  return graft;
}

uint32_t default_root(const cmj_graft* g, const std::optional<uint32_t>& root) {
  if (root) return *root;
  std::size_t count = 0;
  const uint32_t* t = cmj_graft_terminals(g, &count);
  return count > 0 ? t[0] : 0;
}

std::vector<std::pair<uint32_t, uint32_t>> edge_pairs(const cmj_graft* g, const uint32_t* ids, std::size_t count) {
  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    uint32_t u = 0;
    uint32_t v = 0;
    check(cmj_graft_edge(g, ids[i], &u, &v));
    pairs.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

struct Options {
  std::string file = "-";
  std::string format = "text";
  std::optional<uint32_t> root;
  uint64_t seed = 0;
  int depth = 0;
  std::string kind;
  std::string recipe_out;
};

int run_check(const Options& o) {
  GraftPtr g = load_graft(o.file);
  cmj_result* raw = nullptr;
  check(o.root ? cmj_check_rooted(g.get(), *o.root, &raw) : cmj_check(g.get(), &raw));
  ResultPtr result(raw);
  const bool found = cmj_result_found(raw) != 0;
  if (o.format == "json") {
    std::cout << take_string([&] { char* s = nullptr; check(cmj_result_json(raw, &s)); return s; }());
    return found ? kExitYes : kExitNo;
  }
  if (!found) {
    std::cout << "no\n" << cmj_result_stage(raw) << "\n";
    return kExitNo;
  }
  std::size_t count = 0;
  const uint32_t* join = cmj_result_join(raw, &count);
  std::cout << "yes\n";
  for (const auto& [u, v] : edge_pairs(g.get(), join, count)) std::cout << u << " " << v << "\n";
  const uint32_t* cover = cmj_result_coverable(raw, &count);
  std::cout << "coverable";
  for (std::size_t i = 0; i < count; ++i) std::cout << " " << cover[i];
  std::cout << "\n";
  return kExitYes;
}

int run_solve(const Options& o) {
  GraftPtr g = load_graft(o.file);
  uint32_t* ids = nullptr;
  std::size_t count = 0;
  check(cmj_minimum_join(g.get(), &ids, &count));
  std::vector<uint32_t> join(ids, ids + count);
  cmj_array_free(ids);
  const auto pairs = edge_pairs(g.get(), join.data(), join.size());
  if (o.format == "json") {
    nlohmann::json out = {{"nu", count}, {"join", pairs}, {"join_ids", join}};
    std::cout << out.dump(2) << "\n";
    return kExitYes;
  }
  std::cout << "nu " << count << "\n";
  for (const auto& [u, v] : pairs) std::cout << u << " " << v << "\n";
  return kExitYes;
}

int run_distances(const Options& o) {
  GraftPtr g = load_graft(o.file);
  const uint32_t root = default_root(g.get(), o.root);
  int64_t* dist = nullptr;
  unsigned char* reachable = nullptr;
  std::size_t count = 0;
  check(cmj_distances(g.get(), root, &dist, &reachable, &count));
  nlohmann::json values = nlohmann::json::array();
  std::ostringstream text;
  for (std::size_t v = 0; v < count; ++v) {
    values.push_back(reachable[v] ? nlohmann::json(dist[v]) : nlohmann::json(nullptr));
    text << v << " " << (reachable[v] ? std::to_string(dist[v]) : std::string("unreachable")) << "\n";
  }
  cmj_array_free(dist);
  cmj_array_free(reachable);
  if (o.format == "json") {
    std::cout << nlohmann::json{{"root", root}, {"dist", values}}.dump(2) << "\n";
  } else {
    std::cout << "root " << root << "\n" << text.str();
  }
  return kExitYes;
}

int run_decompose(const Options& o) {
  GraftPtr g = load_graft(o.file);
  char* out = nullptr;
  check(cmj_decompose_json(g.get(), default_root(g.get(), o.root), &out));
  std::cout << take_string(out);
  return kExitYes;
}

int run_verify(const Options& o) {
  GraftPtr g = load_graft(o.file);
  int clean = 0;
  char* out = nullptr;
  check(cmj_verify(g.get(), default_root(g.get(), o.root), &clean, &out));
  std::cout << take_string(out);
  return clean ? kExitYes : kExitNo;
}

int run_oracle(const Options& o) {
  GraftPtr g = load_graft(o.file);
  char* out = nullptr;
  check(cmj_oracle_json(g.get(), &out));
  std::cout << take_string(out);
  return kExitYes;
}

void emit_graft(const cmj_graft* g, const std::string& recipe, const Options& o) {
  char* text = nullptr;
  check(cmj_graft_format(g, &text));
  const std::string graft = take_string(text);
  if (!o.recipe_out.empty()) write_file(o.recipe_out, recipe);
  if (o.format == "json") {
    std::cout << nlohmann::json{{"graft", graft}, {"recipe", nlohmann::json::parse(recipe)}}.dump(2) << "\n";
  } else {
    std::cout << graft;
  }
}

int run_generate(const Options& o) {
  cmj_generator kind = CMJ_GEN_RAKE;
  if (o.kind == "primal") kind = CMJ_GEN_PRIMAL;
  if (o.kind == "tailed") kind = CMJ_GEN_TAILED;
  cmj_graft* raw = nullptr;
  char* recipe = nullptr;
  check(cmj_generate(kind, o.seed, o.depth, &raw, &recipe));
  GraftPtr g(raw);
  emit_graft(g.get(), take_string(recipe), o);
  return kExitYes;
}

int run_replay(const Options& o) {
  const std::string recipe = read_input(o.file);
  cmj_graft* raw = nullptr;
  check(cmj_replay(recipe.c_str(), &raw));
  GraftPtr g(raw);
  char* text = nullptr;
  check(cmj_graft_format(g.get(), &text));
  std::cout << take_string(text);
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected minimum T-joins: decide, construct, decompose, generate"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub, const char* what) {
    sub->add_option("file", o.file, what)->default_val("-");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };
  auto add_root = [&](CLI::App* sub) { sub->add_option("--root", o.root, "Root vertex"); };

  auto* check_cmd = app.add_subcommand("check", "Decide whether a connected minimum join exists");
  add_file(check_cmd, "Graft file ('-' for stdin)");
  add_format(check_cmd);
  add_root(check_cmd);
  auto* solve_cmd = app.add_subcommand("solve", "Compute a minimum join");
  add_file(solve_cmd, "Graft file ('-' for stdin)");
  add_format(solve_cmd);
  auto* dist_cmd = app.add_subcommand("distances", "F-distances from a root");
  add_file(dist_cmd, "Graft file ('-' for stdin)");
  add_format(dist_cmd);
  add_root(dist_cmd);
  auto* dec_cmd = app.add_subcommand("decompose", "Distance decomposition as JSON");
  add_file(dec_cmd, "Graft file ('-' for stdin)");
  add_root(dec_cmd);
  auto* verify_cmd = app.add_subcommand("verify", "Check the decomposition invariants");
  add_file(verify_cmd, "Graft file ('-' for stdin)");
  add_root(verify_cmd);
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive report for small grafts");
  add_file(oracle_cmd, "Graft file ('-' for stdin)");
  auto* gen_cmd = app.add_subcommand("generate", "Generate a rake, primal or tailed graft");
  gen_cmd->add_option("kind", o.kind, "rake | primal | tailed")
      ->required()
      ->check(CLI::IsMember({"rake", "primal", "tailed"}));
  gen_cmd->add_option("--seed", o.seed, "Random seed")->default_val(0);
  gen_cmd->add_option("--depth", o.depth, "Gluing depth")->default_val(0)->check(CLI::Range(0, 4));
  gen_cmd->add_option("--recipe", o.recipe_out, "Write the recipe JSON here");
  add_format(gen_cmd);
  auto* replay_cmd = app.add_subcommand("replay", "Rebuild a graft from a recipe");
  add_file(replay_cmd, "Recipe JSON file ('-' for stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check_cmd->parsed()) return run_check(o);
    if (solve_cmd->parsed()) return run_solve(o);
    if (dist_cmd->parsed()) return run_distances(o);
    if (dec_cmd->parsed()) return run_decompose(o);
    if (verify_cmd->parsed()) return run_verify(o);
    if (oracle_cmd->parsed()) return run_oracle(o);
    if (gen_cmd->parsed()) return run_generate(o);
    if (replay_cmd->parsed()) return run_replay(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
