#include "cmj/decomposition.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "cmj/error.hpp"

namespace cmj {

const char* to_string(ComponentKind kind) noexcept {
  return kind == ComponentKind::layer ? "layer" : "q";
}

InducedGraft induced_graft(const Graft& graft, std::span<const EdgeId> join,
                           std::span<const VertexId> vertices) {
  Subgraph sub = induced_subgraph(graft.graph(), vertices);
  std::vector<std::optional<EdgeId>> from_parent_edge(graft.edge_count());
  for (EdgeId e = 0; e < sub.to_parent_edge.size(); ++e) from_parent_edge[sub.to_parent_edge[e]] = e;
  Join inner;
  std::vector<char> odd(sub.graph.vertex_count(), 0);
  for (EdgeId e : join) {
    if (!from_parent_edge.at(e)) continue;
    const EdgeId local = *from_parent_edge[e];
    inner.push_back(local);
    odd[sub.graph.edge(local).u] ^= 1;
    odd[sub.graph.edge(local).v] ^= 1;
  }
  std::sort(inner.begin(), inner.end());
  VertexSet terminals;
  for (VertexId v = 0; v < odd.size(); ++v) {
    if (odd[v]) terminals.push_back(v);
  }
  Graph copy = sub.graph;
  return {validate_graft(std::move(copy), terminals), std::move(sub), std::move(inner)};
}

ContractedGraft contract_graft(const Graft& graft, std::span<const VertexSet> family) {
  Contraction c = contract(graft.graph(), family);
  std::vector<char> odd(c.graph.vertex_count(), 0);
  for (VertexId v : graft.terminals()) odd[c.vertex_map[v]] ^= 1;
  VertexSet terminals;
  for (VertexId v = 0; v < odd.size(); ++v) {
    if (odd[v]) terminals.push_back(v);
  }
  Graph copy = c.graph;
  return {validate_graft(std::move(copy), terminals), std::move(c)};
}

namespace {

struct RawComponent {
  int level;
  ComponentKind kind;
  VertexSet vertices;
};

std::vector<VertexSet> group_present(UnionFind& uf, const std::vector<VertexId>& present) {
  std::map<std::size_t, VertexSet> groups;
  for (VertexId v : present) groups[uf.find(v)].push_back(v);
  std::vector<VertexSet> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

// Join edges in delta(K), K given by a membership stamp.
std::vector<EdgeId> join_edges_leaving(const Graph& g, const VertexSet& vertices,
                                       const std::vector<char>& in_join,
                                       std::vector<std::size_t>& stamp, std::size_t mark) {
  for (VertexId v : vertices) stamp[v] = mark;
  std::vector<EdgeId> out;
  for (VertexId v : vertices) {
    for (const Incidence& inc : g.incident(v)) {
      if (stamp[inc.other] != mark && in_join[inc.edge]) out.push_back(inc.edge);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DistanceDecomposition distance_decomposition(const Graft& graft, std::span<const EdgeId> join,
                                             VertexId root) {
  const Graph& g = graft.graph();
  DistanceDecomposition dd;
  dd.root = root;
  dd.distances = f_distances(graft, join, root);
  const auto& dist = dd.distances.dist;

  std::map<int, std::vector<VertexId>> levels;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (dist[v]) {
      levels[static_cast<int>(*dist[v])].push_back(v);
    } else {
      dd.detached.push_back(v);
    }
  }
  for (const auto& [level, members] : levels) dd.interval.push_back(level);
  for (std::size_t i = 1; i < dd.interval.size(); ++i) {
    if (dd.interval[i] != dd.interval[i - 1] + 1) {
      fail(ErrorKind::theorem_violation, "distance interval has a gap below level " +
                                             std::to_string(dd.interval[i]));
    }
  }

  std::vector<RawComponent> raw;
  UnionFind uf(g.vertex_count());
  std::vector<VertexId> present;
  for (const auto& [level, members] : levels) {
    present.insert(present.end(), members.begin(), members.end());
    std::sort(present.begin(), present.end());
    for (VertexId v : members) {
      for (const Incidence& inc : g.incident(v)) {
        if (dist[inc.other] && *dist[inc.other] == level - 1) uf.unite(v, inc.other);
      }
    }
    for (VertexSet& q : group_present(uf, present)) {
      raw.push_back({level, ComponentKind::q, std::move(q)});
    }
    for (VertexId v : members) {
      for (const Incidence& inc : g.incident(v)) {
        if (dist[inc.other] && *dist[inc.other] == level) uf.unite(v, inc.other);
      }
    }
    for (VertexSet& k : group_present(uf, present)) {
      raw.push_back({level, ComponentKind::layer, std::move(k)});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawComponent& a, const RawComponent& b) {
    return std::tuple(a.level, a.kind != ComponentKind::layer, a.vertices.front()) <
           std::tuple(b.level, b.kind != ComponentKind::layer, b.vertices.front());
  });

  std::vector<char> in_join(g.edge_count(), 0);
  for (EdgeId e : join) in_join[e] = 1;
  std::vector<std::size_t> stamp(g.vertex_count(), 0);
  // owner[v] per (level, kind) resolves children by their smallest vertex.
  std::map<std::pair<int, ComponentKind>, std::vector<std::size_t>> owner;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  dd.components.reserve(raw.size());
  for (std::size_t id = 0; id < raw.size(); ++id) {
    RawComponent& r = raw[id];
    Component c;
    c.id = id;
    c.level = r.level;
    c.kind = r.kind;
    c.vertices = std::move(r.vertices);
    for (VertexId v : c.vertices) {
      (*dist[v] == c.level ? c.a_set : c.d_set).push_back(v);
    }
    if (c.a_set.empty()) {
      fail(ErrorKind::internal, "component without top-level vertices at level " +
                                    std::to_string(c.level));
    }
    c.is_cap = contains(c.vertices, root);
    auto& own = owner[{c.level, c.kind}];
    if (own.empty()) own.assign(g.vertex_count(), kNone);
    for (VertexId v : c.vertices) own[v] = id;

    if (!c.is_cap) {
      const auto leaving = join_edges_leaving(g, c.vertices, in_join, stamp, id + 1);
      if (leaving.size() != 1) {
        fail(ErrorKind::theorem_violation,
             std::string(to_string(c.kind)) + " component " + std::to_string(id) + " at level " +
                 std::to_string(c.level) + " is left by " + std::to_string(leaving.size()) +
                 " join edges instead of 1");
      }
      c.beam = leaving.front();
      const Edge& e = g.edge(*c.beam);
      c.f_root = contains(c.vertices, e.u) ? e.u : e.v;
    }
    dd.components.push_back(std::move(c));
  }

  for (Component& c : dd.components) {
    if (c.kind == ComponentKind::layer) {
      const auto& qs = owner.at({c.level, ComponentKind::q});
      for (VertexId v : c.vertices) {
        const std::size_t q = qs[v];
        if (dd.components[q].vertices.front() == v) c.q_children.push_back(q);
      }
      if (c.level == 0 && c.is_cap) dd.initial_id = c.id;
    }
    auto lower = owner.find({c.level - 1, ComponentKind::layer});
    if (lower == owner.end()) continue;
    for (VertexId v : c.d_set) {
      const std::size_t l = lower->second[v];
      if (dd.components[l].vertices.front() == v) c.d_children.push_back(l);
    }
  }
  std::sort(dd.interval.begin(), dd.interval.end());
  return dd;
}

bool is_factor_critical(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 0) return true;
  if (n % 2 == 0) return false;
  for (VertexId removed = 0; removed < n; ++removed) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::int64_t> weights;
    auto index = [removed](VertexId v) { return static_cast<std::size_t>(v < removed ? v : v - 1); };
    for (const Edge& e : graph.edges()) {
      if (e.u == removed || e.v == removed) continue;
      edges.emplace_back(index(e.u), index(e.v));
      weights.push_back(1);
    }
    const auto mate = max_weight_matching(n - 1, edges, weights, true);
    if (std::any_of(mate.begin(), mate.end(), [](long m) { return m < 0; })) return false;
  }
  return true;
}

bool is_strong_comb(const Graft& graft, VertexId root, std::span<const VertexId> teeth) {
  const Graph& g = graft.graph();
  check_vertices(g, teeth);
  check_vertices(g, std::span<const VertexId>(&root, 1));
  const VertexSet b = normalized({teeth.begin(), teeth.end()});
  if (contains(b, root)) return false;
  std::vector<char> in_b(g.vertex_count(), 0);
  for (VertexId v : b) in_b[v] = 1;
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
  const DistanceMap d = f_distances(graft, root);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!d.dist[v] || *d.dist[v] != (in_b[v] ? -1 : 0)) return false;
  }
  return true;
}

namespace {

class SeboChecker {
 public:
  SeboChecker(const Graft& graft, std::span<const EdgeId> join, const DistanceDecomposition& dd)
      : graft_(graft), join_(join.begin(), join.end()), dd_(dd),
        in_join_(graft.edge_count(), 0), stamp_(graft.vertex_count(), 0) {
    for (EdgeId e : join_) in_join_[e] = 1;
  }

  SeboReport run() {
    for (const Component& c : dd_.components) {
      ++report_.components_checked;
      check_beam(c);
      if (c.kind == ComponentKind::layer && !c.is_cap) check_induced(c);
      if (c.kind == ComponentKind::layer && (!c.is_cap || c.id == dd_.initial_id)) check_q_contraction(c);
      if (c.kind == ComponentKind::q && !c.is_cap && !c.d_set.empty()) check_d_contraction(c);
    }
    return std::move(report_);
  }

 private:
  void add(const Component& c, const char* check, std::string detail) {
    report_.violations.push_back({c.id, check, std::move(detail)});
  }

  void check_beam(const Component& c) {
    const auto leaving = join_edges_leaving(graft_.graph(), c.vertices, in_join_, stamp_, ++mark_);
    const std::size_t expected = c.is_cap ? 0 : 1;
    if (leaving.size() != expected) {
      add(c, "beam-count", std::to_string(leaving.size()) + " join edges leave the component, expected " +
                               std::to_string(expected));
    } else if (!c.is_cap && (!c.beam || leaving.front() != *c.beam)) {
      add(c, "beam-count", "recorded beam differs from the join edge leaving the component");
    }
  }

  void check_induced(const Component& c) {
    const InducedGraft ind = induced_graft(graft_, join_, c.vertices);
    const std::size_t optimum = nu(ind.graft);
    if (optimum != ind.join.size()) {
      add(c, "induced-join", "F[K] has " + std::to_string(ind.join.size()) +
                                 " edges, induced graft needs " + std::to_string(optimum));
      return;
    }
    if (!c.f_root) return;
    const VertexId local_root = *ind.map.from_parent_vertex[*c.f_root];
    const DistanceMap inner = f_distances(ind.graft, ind.join, local_root);
    const std::int64_t offset = dd_.distances.at(*c.f_root);
    for (VertexId x : c.vertices) {
      const VertexId local = *ind.map.from_parent_vertex[x];
      const std::int64_t projected = offset + inner.at(local);
      if (projected != dd_.distances.at(x)) {
        add(c, "projection", "vertex " + std::to_string(x) + ": dist " +
                                 std::to_string(dd_.distances.at(x)) + " but projection gives " +
                                 std::to_string(projected));
      }
    }
  }

  void check_q_contraction(const Component& c) {
    const VertexId root = c.f_root ? *c.f_root : dd_.root;
    const InducedGraft ind = induced_graft(graft_, join_, c.vertices);
    std::vector<VertexSet> family;
    for (std::size_t q : c.q_children) family.push_back(local(ind, dd_.component(q).vertices));
    const ContractedGraft con = contract_graft(ind.graft, family);
    const Graph& h = con.graft.graph();
    const VertexId new_root = con.map.vertex_map[*ind.map.from_parent_vertex[root]];

    if (!is_factor_critical(h)) add(c, "factor-critical", "Q-contraction is not factor-critical");
    VertexSet expected;
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
      if (v != new_root) expected.push_back(v);
    }
    if (con.graft.terminals() != expected) {
      add(c, "factor-critical", "Q-contraction terminals are not all vertices but the F-root");
    }
    Join top;
    for (EdgeId e : ind.join) {
      const Edge& ed = ind.graft.graph().edge(e);
      const VertexId pu = ind.map.to_parent_vertex[ed.u];
      const VertexId pv = ind.map.to_parent_vertex[ed.v];
      if (!contains(c.a_set, pu) || !contains(c.a_set, pv)) continue;
      const auto mapped = con.map.edge_map[e];
      if (!mapped) {
        add(c, "factor-critical", "join edge inside one Q-component on the top level");
        return;
      }
      top.push_back(*mapped);
    }
    std::sort(top.begin(), top.end());
    if (!is_join(con.graft, top) || top.size() != nu(con.graft)) {
      add(c, "factor-critical", "F[A_K] is not a minimum join of the Q-contraction");
    }
  }

  void check_d_contraction(const Component& c) {
    const InducedGraft ind = induced_graft(graft_, join_, c.vertices);
    std::vector<VertexSet> family;
    for (std::size_t l : c.d_children) family.push_back(local(ind, dd_.component(l).vertices));
    const ContractedGraft con = contract_graft(ind.graft, family);
    const VertexId new_root = con.map.vertex_map[*ind.map.from_parent_vertex[*c.f_root]];
    const VertexSet teeth = normalized(con.map.family_vertex);
    if (!is_strong_comb(con.graft, new_root, teeth)) {
      add(c, "strong-comb", "D-contraction is not a strong comb with respect to the F-root");
    }
    std::vector<char> in_d(ind.graft.vertex_count(), 0);
    for (VertexId v : c.d_set) in_d[*ind.map.from_parent_vertex[v]] = 1;
    Join crossing;
    for (EdgeId e : ind.join) {
      const Edge& ed = ind.graft.graph().edge(e);
      if (in_d[ed.u] == in_d[ed.v]) continue;
      crossing.push_back(*con.map.edge_map[e]);
    }
    std::sort(crossing.begin(), crossing.end());
    if (!is_join(con.graft, crossing) || crossing.size() != nu(con.graft)) {
      add(c, "strong-comb", "F cap delta(D_K) is not a minimum join of the D-contraction");
    }
    std::vector<std::size_t> degree(con.graft.vertex_count(), 0);
    for (EdgeId e : crossing) {
      ++degree[con.graft.graph().edge(e).u];
      ++degree[con.graft.graph().edge(e).v];
    }
    for (VertexId t : teeth) {
      if (degree[t] != 1) {
        add(c, "tooth-degree", "tooth " + std::to_string(t) + " meets " + std::to_string(degree[t]) +
                                   " join edges");
      }
    }
  }

  static VertexSet local(const InducedGraft& ind, const VertexSet& vertices) {
    VertexSet out;
    for (VertexId v : vertices) out.push_back(*ind.map.from_parent_vertex.at(v));
    return out;
  }

  const Graft& graft_;
  Join join_;
  const DistanceDecomposition& dd_;
  std::vector<char> in_join_;
  std::vector<std::size_t> stamp_;
  std::size_t mark_ = 0;
  SeboReport report_;
};

}  // namespace

SeboReport verify_sebo_invariants(const Graft& graft, std::span<const EdgeId> join,
                                  const DistanceDecomposition& decomposition) {
  check_edges(graft.graph(), join);
  Join sorted(join.begin(), join.end());
  std::sort(sorted.begin(), sorted.end());
  return SeboChecker(graft, sorted, decomposition).run();
}

}  // namespace cmj
