// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.
#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cmj/connected_join.hpp"
#include "cmj/constructive.hpp"
#include "cmj/decomposition.hpp"
#include "cmj/error.hpp"
#include "cmj/graft_io.hpp"
#include "cmj/oracle.hpp"
#include "cmj/serialize.hpp"
#include "support.hpp"

namespace {

using namespace cmj;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kCorpusSize = 500;
constexpr double kCorpusSeconds = 60.0;
constexpr std::size_t kPrimalCount = 200;
constexpr std::size_t kRakeCount = 200;
constexpr double kSmokeSeconds = 10.0;
constexpr std::size_t kSmokeVertices = 500;
constexpr std::size_t kSmokeEdges = 2000;
constexpr std::size_t kSmokeTerminals = 40;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int number;
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  std::string extra;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool passed() const { return failures == 0 && checked > 0; }
  void print() const {
    std::cout << (passed() ? "PASS" : "FAIL") << " criterion " << number << " (" << name << "): " << checked
              << " checks, " << failures << " failures";
    if (!extra.empty()) std::cout << "; " << extra;
    if (failures > 0) std::cout << "; first: " << first_failure;
    std::cout << std::endl;
  }
};

struct CommandResult {
  int exit_code = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.output.append(buffer, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("cmj_acceptance_" + name);
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

std::uint64_t mask_of(std::span<const EdgeId> edges) {
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= std::uint64_t{1} << e;
  return m;
}

Graft with_terminals(const Graft& graft, const VertexSet& terminals) {
  return validate_graft(graft.graph(), terminals);
}

std::string tag(std::uint64_t seed) { return "seed " + std::to_string(seed); }

// Criteria 1-5 share one corpus of random connected grafts.
void run_corpus(Criterion& c1, Criterion& c2, Criterion& c3, Criterion& c4, Criterion& c5) {
  const auto start = Clock::now();
  for (std::uint64_t seed = 0; seed < kCorpusSize; ++seed) {
    const Graft graft = test::random_connected_graft(seed);
    const Graph& g = graft.graph();
    const std::size_t n = g.vertex_count();
    const OracleReport oracle = oracle_report(graft);
    const Join f = minimum_join(graft);

    // 1 and 2: decision, root independence, head set.
    const ConnectedJoinResult result = connected_minimum_join(graft);
    c1.expect(result.found == oracle.has_connected, tag(seed) + ": decision differs from the oracle");
    for (VertexId r : graft.terminals()) {
      c1.expect(connected_minimum_join(graft, r).found == result.found, tag(seed) + ": answer depends on the root");
    }
    if (result.found) {
      c1.expect(is_join(graft, result.join) && result.join.size() == oracle.nu &&
                    is_connected_edge_set(g, result.join),
                tag(seed) + ": returned join is not a connected minimum join");
      const DistanceDecomposition dd = distance_decomposition(graft, f, *result.root);
      VertexSet expected;
      std::set_intersection(oracle.coverable.begin(), oracle.coverable.end(), dd.initial().a_set.begin(),
                            dd.initial().a_set.end(), std::back_inserter(expected));
      c2.expect(result.coverable == expected, tag(seed) + ": h(initial) differs from oracle coverable set on A(r)");
    } else {
      c2.expect(result.coverable.empty(), tag(seed) + ": coverable set reported for a NO answer");
    }

    // 3: join size, parity, circuit conservativeness in both directions.
    c3.expect(f.size() == oracle.nu, tag(seed) + ": nu differs from the oracle");
    c3.expect(is_join(graft, f), tag(seed) + ": minimum_join output is not a join");
    std::vector<std::uint64_t> circuits;
    for (const EdgeSet& c : enumerate_circuits(g)) circuits.push_back(mask_of(c));
    auto conservative = [&](std::uint64_t join) {
      return std::all_of(circuits.begin(), circuits.end(), [&](std::uint64_t c) {
        return std::popcount(c) - 2 * std::popcount(c & join) >= 0;
      });
    };
    const std::uint64_t subsets = std::uint64_t{1} << g.edge_count();
    std::vector<EdgeSet> all_joins;
    for (std::uint64_t s = 0; s < subsets; ++s) {
      EdgeSet edges;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if ((s >> e) & 1) edges.push_back(e);
      }
      if (!is_join(graft, edges)) continue;
      const bool minimum = edges.size() == oracle.nu;
      c3.expect(conservative(s) == minimum, tag(seed) + ": circuit criterion disagrees with minimality");
    }

    // 4: distances.
    std::vector<DistanceMap> dist;
    for (VertexId r = 0; r < n; ++r) dist.push_back(f_distances(graft, f, r));
    if (oracle.min_joins.size() >= 2) {
      for (const Join& other : oracle.min_joins) {
        for (VertexId r = 0; r < n; ++r) {
          c4.expect(f_distances(graft, other, r) == dist[r], tag(seed) + ": distances depend on the minimum join");
        }
      }
    }
    for (VertexId r = 0; r < n; ++r) {
      for (VertexId x = 0; x < n; ++x) {
        const std::int64_t d = dist[r].at(x);
        c4.expect(shortest_path_weight_oracle(graft, f, r, x) == d, tag(seed) + ": distance differs from path oracle");
        c4.expect(dist[x].at(r) == d, tag(seed) + ": distance is not symmetric");
        for (VertexId z = 0; z < n; ++z) {
          c4.expect(dist[r].at(z) <= d + dist[x].at(z),
                  tag(seed) + ": triangle inequality fails for (" + std::to_string(r) + "," + std::to_string(x) + "," +
                      std::to_string(z) + "): " + std::to_string(dist[r].at(z)) + " > " + std::to_string(d) + " + " +
                      std::to_string(dist[x].at(z)));
        }
        if (x == r) continue;
        const Graft shifted = with_terminals(graft, symmetric_difference(graft.terminals(), normalized({r, x})));
        c4.expect(oracle_report(shifted).nu == static_cast<std::size_t>(static_cast<std::int64_t>(oracle.nu) + d),
                  tag(seed) + ": join-difference identity fails");
        const DistanceMap moved = f_distances(shifted, x);
        for (VertexId y = 0; y < n; ++y) {
          c4.expect(moved.at(y) == dist[r].at(y) - d, tag(seed) + ": shifted-distance identity fails");
        }
      }
    }

    // 5: decomposition invariants for every root.
    for (VertexId r = 0; r < n; ++r) {
      try {
        const DistanceDecomposition dd = distance_decomposition(graft, f, r);
        const SeboReport report = verify_sebo_invariants(graft, f, dd);
        c5.expect(report.ok(), tag(seed) + " root " + std::to_string(r) + ": " +
                                   (report.ok() ? "" : report.violations.front().check + " " +
                                                           report.violations.front().detail));
      } catch (const Error& e) {
        c5.expect(false, tag(seed) + " root " + std::to_string(r) + ": " + e.what());
      }
    }
  }
  const double elapsed = seconds_since(start);
  c1.expect(elapsed < kCorpusSeconds, "corpus took " + std::to_string(elapsed) + " s");
  std::ostringstream note;
  note.precision(2);
  note << std::fixed << kCorpusSize << " grafts (n <= 8, m <= 14) in " << elapsed << " s, limit " << kCorpusSeconds
       << " s";
  c1.extra = note.str();
}

PrimalParams params_for_depth(int depth) {
  PrimalParams p;
  p.max_teeth = depth <= 1 ? 4 : depth == 2 ? 3 : 2;
  p.max_extra_vertices = 2;
  p.max_extra_edges = 2;
  p.max_tail_vertices = 3;
  return p;
}

bool oracle_sized(const Graft& graft) {
  const std::size_t m = graft.edge_count();
  const std::size_t rank = m + connected_components(graft.graph()).size() - graft.vertex_count();
  return m <= kOracleMaxEdges || (m <= kOracleMaxEdgesCycleSpace && rank <= kOracleMaxCycleRank);
}

void run_constructive(Criterion& c6) {
  std::size_t oracle_checked = 0;
  for (std::uint64_t seed = 0; seed < kPrimalCount; ++seed) {
    const int depth = static_cast<int>(seed % (kMaxPrimalDepth + 1));
    const bool tailed = seed % 2 == 1;
    PrimalWitness w;
    Graft graft;
    if (tailed) {
      GeneratedTailed gen = gen_tailed(depth, params_for_depth(depth), seed);
      w = std::move(gen.witness);
      graft = std::move(gen.graft);
    } else {
      GeneratedPrimal gen = gen_primal(depth, params_for_depth(depth), seed);
      w = gen.witness;
      graft = std::move(gen.witness.graft);
    }
    const std::string where = std::string(tailed ? "tailed" : "primal") + " " + tag(seed);
    const ConnectedJoinResult result = connected_minimum_join(graft);
    c6.expect(result.found, where + ": pipeline answers NO");
    const std::size_t optimum = nu(graft);
    const bool covers_root = std::any_of(w.join.begin(), w.join.end(), [&](EdgeId e) {
      return graft.graph().edge(e).u == w.root || graft.graph().edge(e).v == w.root;
    });
    c6.expect(is_join(graft, w.join) && w.join.size() == optimum && is_connected_edge_set(graft.graph(), w.join) &&
                  covers_root,
              where + ": construction join is not a connected minimum join covering r");
    if (graft.is_terminal(w.root)) {
      const ConnectedJoinResult rooted = connected_minimum_join(graft, w.root);
      c6.expect(rooted.found && contains(rooted.coverable, w.root), where + ": r is not in h(initial)");
    }
    if (!tailed) {
      const DistanceMap d = f_distances(graft, w.root);
      VertexSet zero;
      bool primal = true;
      for (VertexId v = 0; v < graft.vertex_count(); ++v) {
        if (!d.dist[v] || *d.dist[v] > 0) primal = false;
        if (d.dist[v] && *d.dist[v] == 0) zero.push_back(v);
      }
      c6.expect(primal && is_primal(graft, w.root), where + ": witness is not primal");
      c6.expect(zero == w.a_set, where + ": A(G,T,r) differs from the recorded A-set");
    }
    if (graft.vertex_count() <= kOracleMaxVertices && oracle_sized(graft)) {
      ++oracle_checked;
      const OracleReport oracle = oracle_report(graft);
      c6.expect(oracle.has_connected && contains(oracle.coverable, w.root), where + ": oracle finds no join covering r");
    }
  }
  for (std::uint64_t seed = 0; seed < kRakeCount; ++seed) {
    PrimalParams p;
    p.max_teeth = 1 + seed % 6;
    p.max_extra_vertices = seed % 4;
    p.max_extra_edges = seed % 5;
    const GeneratedRake rake = gen_rake(p, 10'000 + seed);
    const std::string where = "rake " + tag(seed);
    EdgeSet star;
    for (VertexId b : rake.teeth) star.push_back(b - 1);
    c6.expect(is_rake(rake.graft, rake.root, rake.teeth), where + ": fails is_rake");
    c6.expect(is_strong_comb(rake.graft, rake.root, rake.teeth), where + ": fails is_strong_comb");
    c6.expect(nu(rake.graft) == rake.teeth.size(), where + ": nu differs from |B|");
    c6.expect(is_join(rake.graft, star) && star.size() == nu(rake.graft), where + ": E[r,B] is not a minimum join");
  }
  c6.extra = std::to_string(kPrimalCount) + " primal/tailed + " + std::to_string(kRakeCount) + " rakes, " +
             std::to_string(oracle_checked) + " also oracle-checked";
}

void run_goldens(Criterion& c7, const std::string& cli) {
  struct Golden {
    std::string name;
    std::string file;
    bool yes;
    Join join;
    VertexSet coverable;
    std::string cli_text;
    int exit_code;
  };
  const std::vector<Golden> goldens = {
      {"P3", "p graft 3 2\nt 0 2\ne 0 1\ne 1 2\n", true, {0, 1}, {0}, "yes\n0 1\n1 2\ncoverable 0\n", 0},
      {"P5", "p graft 5 4\nt 0 1 3 4\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n", false, {}, {},
       "no\nnot-eligible:T_OUTSIDE_INITIAL\n", 1},
      {"K13", "p graft 4 3\nt 0 1 2 3\ne 0 1\ne 0 2\ne 0 3\n", true, {0, 1, 2}, {0}, "yes\n0 1\n0 2\n0 3\ncoverable 0\n",
       0},
      {"C4", "p graft 4 4\nt 0 2\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n", true, {0, 1}, {0}, "yes\n0 1\n1 2\ncoverable 0\n", 0},
      {"empty-T", "p graft 3 2\nt\ne 0 1\ne 1 2\n", false, {}, {}, "no\nempty-T\n", 1},
  };
  for (const Golden& gold : goldens) {
    const Graft graft = parse_graft(gold.file).graft;
    const ConnectedJoinResult r = connected_minimum_join(graft);
    c7.expect(r.found == gold.yes && r.join == gold.join && r.coverable == gold.coverable,
              gold.name + ": library output differs");
    const std::string path = temp_file(gold.name + ".graft", gold.file);
    const CommandResult out = run_command("'" + cli + "' check '" + path + "'");
    c7.expect(out.output == gold.cli_text && out.exit_code == gold.exit_code, gold.name + ": CLI output differs");
  }
  // Oracle and distance examples.
  const Graft p3 = parse_graft(goldens[0].file).graft;
  const Graft p5 = parse_graft(goldens[1].file).graft;
  const OracleReport o3 = oracle_report(p3);
  c7.expect(o3.nu == 2 && o3.min_joins == std::vector<Join>{{0, 1}} && o3.has_connected &&
                o3.coverable == VertexSet{0, 1, 2},
            "P3 oracle report differs");
  const OracleReport o5 = oracle_report(p5);
  c7.expect(o5.nu == 2 && o5.min_joins == std::vector<Join>{{0, 3}} && !o5.has_connected, "P5 oracle report differs");
  const DistanceMap d5 = f_distances(p5, Join{0, 3}, 0);
  c7.expect(d5.dist == std::vector<std::optional<std::int64_t>>{0, -1, 0, 1, 0}, "P5 distances differ");
  const DistanceDecomposition dd3 = distance_decomposition(p3, Join{0, 1}, 0);
  c7.expect(dd3.interval == std::vector<int>{-2, -1, 0} && dd3.initial().a_set == VertexSet{0} &&
                dd3.initial().d_set == VertexSet{1, 2},
            "P3 decomposition differs");
}

void run_determinism(Criterion& c8, const std::string& cli) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int depth = static_cast<int>(seed % 3);
    const GeneratedTailed a = gen_tailed(depth, params_for_depth(depth), seed);
    const GeneratedTailed b = gen_tailed(depth, params_for_depth(depth), seed);
    const std::string recipe = dump(to_json(a.recipe));
    c8.expect(format_graft(a.graft) == format_graft(b.graft) && recipe == dump(to_json(b.recipe)),
              tag(seed) + ": generation is not reproducible");
    const ConstructionRecipe back = recipe_from_json(Json::parse(recipe));
    c8.expect(back == a.recipe && format_graft(replay(back)) == format_graft(a.graft),
              tag(seed) + ": recipe replay differs");
    c8.expect(parse_graft(format_graft(a.graft)).graft == a.graft, tag(seed) + ": file round trip differs");
    const auto r1 = connected_minimum_join(a.graft);
    const auto r2 = connected_minimum_join(a.graft);
    c8.expect(dump(to_json(r1, a.graft.graph())) == dump(to_json(r2, a.graft.graph())),
              tag(seed) + ": repeated check differs");
  }
  for (const char* kind : {"rake", "primal", "tailed"}) {
    for (int seed : {1, 7, 42}) {
      const std::string recipe_path =
          (std::filesystem::temp_directory_path() / ("cmj_acceptance_recipe_" + std::string(kind) + ".json")).string();
      const std::string cmd = "'" + cli + "' generate " + kind + " --seed " + std::to_string(seed) + " --depth 2";
      const CommandResult first = run_command(cmd + " --recipe '" + recipe_path + "'");
      const CommandResult second = run_command(cmd);
      c8.expect(first.exit_code == 0 && first.output == second.output,
                std::string(kind) + ": CLI generate output is not byte-identical");
      const CommandResult replayed = run_command("'" + cli + "' replay '" + recipe_path + "'");
      c8.expect(replayed.exit_code == 0 && replayed.output == first.output,
                std::string(kind) + ": CLI replay differs from generate");
      const std::string graft_path = temp_file(std::string(kind) + ".graft", first.output);
      const CommandResult c1 = run_command("'" + cli + "' check --format json '" + graft_path + "'");
      const CommandResult c2 = run_command("'" + cli + "' check --format json '" + graft_path + "'");
      c8.expect(c1.exit_code == 0 && c1.output == c2.output, std::string(kind) + ": CLI check not reproducible");
    }
  }
}

void run_smoke(Criterion& c9, const std::string& cli) {
  std::mt19937_64 rng(2024);
  Graph g(kSmokeVertices);
  for (VertexId v = 1; v < kSmokeVertices; ++v) g.add_edge(static_cast<VertexId>(rng() % v), v);
  while (g.edge_count() < kSmokeEdges) {
    const auto u = static_cast<VertexId>(rng() % kSmokeVertices);
    const auto v = static_cast<VertexId>(rng() % kSmokeVertices);
    if (u != v) g.add_edge(u, v);
  }
  std::vector<VertexId> all(kSmokeVertices);
  for (VertexId v = 0; v < kSmokeVertices; ++v) all[v] = v;
  std::shuffle(all.begin(), all.end(), rng);
  const VertexSet terminals = normalized({all.begin(), all.begin() + kSmokeTerminals});
  const Graft graft = validate_graft(std::move(g), terminals);
  const std::string path = temp_file("smoke.graft", format_graft(graft));
  const auto start = Clock::now();
  const CommandResult out = run_command("'" + cli + "' check '" + path + "'");
  const double elapsed = seconds_since(start);
  c9.expect(out.exit_code == 0 || out.exit_code == 1, "CLI check failed with exit " + std::to_string(out.exit_code));
  c9.expect(elapsed < kSmokeSeconds, "check took " + std::to_string(elapsed) + " s");
  std::ostringstream note;
  note.precision(2);
  note << std::fixed << "n=" << kSmokeVertices << " m=" << kSmokeEdges << " |T|=" << kSmokeTerminals << " answered '"
       << out.output.substr(0, out.output.find('\n')) << "' in " << elapsed << " s, limit " << kSmokeSeconds << " s";
  c9.extra = note.str();
}

}  // namespace

int main(int argc, char** argv) {
  // Usage: cmj_acceptance [--expect-fail N]... [CLI_PATH]
  std::string cli = CMJ_CLI_PATH;
  std::vector<int> expected_failures;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected_failures.push_back(std::stoi(argv[++i]));
    } else {
      cli = arg;
    }
  }
  Criterion c1{1, "oracle equivalence, decision", 0, 0, {}, {}};
  Criterion c2{2, "oracle equivalence, coverable set", 0, 0, {}, {}};
  Criterion c3{3, "minimum-join correctness", 0, 0, {}, {}};
  Criterion c4{4, "distance canonicity and identities", 0, 0, {}, {}};
  Criterion c5{5, "decomposition invariants", 0, 0, {}, {}};
  Criterion c6{6, "constructive soundness", 0, 0, {}, {}};
  Criterion c7{7, "hand-derived goldens", 0, 0, {}, {}};
  Criterion c8{8, "determinism", 0, 0, {}, {}};
  Criterion c9{9, "smoke performance", 0, 0, {}, {}};

  auto guard = [](Criterion& c, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
  };
  guard(c1, [&] { run_corpus(c1, c2, c3, c4, c5); });
  guard(c6, [&] { run_constructive(c6); });
  guard(c7, [&] { run_goldens(c7, cli); });
  guard(c8, [&] { run_determinism(c8, cli); });
  guard(c9, [&] { run_smoke(c9, cli); });

  bool as_expected = true;
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9}) {
    c->print();
    const bool expect_fail =
        std::find(expected_failures.begin(), expected_failures.end(), c->number) != expected_failures.end();
    as_expected = as_expected && c->passed() != expect_fail;
  }
  return as_expected ? 0 : 1;
}
