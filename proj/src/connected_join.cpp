#include "cmj/connected_join.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "cmj/error.hpp"
#include "cmj/oracle.hpp"

namespace cmj {

const char* to_string(EligibilityFailure failure) noexcept {
  switch (failure) {
    case EligibilityFailure::empty_t: return "EMPTY_T";
    case EligibilityFailure::t_outside_initial: return "T_OUTSIDE_INITIAL";
    case EligibilityFailure::initial_disconnected: return "INITIAL_DISCONNECTED";
    case EligibilityFailure::multiple_q_components: return "MULTIPLE_Q_COMPONENTS";
  }
  return "UNKNOWN";
}

namespace {

EligibilityVerdict reject(EligibilityFailure reason, std::optional<std::size_t> component = {}) {
  return {false, reason, component};
}

bool needs_head(const Component& c, const DistanceDecomposition& dd) {
  return c.kind == ComponentKind::layer && (!c.is_cap || c.id == dd.initial_id);
}

}  // namespace

EligibilityVerdict is_eligible(const Graft& graft, std::span<const EdgeId> join, VertexId r,
                               const DistanceDecomposition& dd) {
  if (graft.terminals().empty()) return reject(EligibilityFailure::empty_t);
  if (dd.root != r) {
    fail(ErrorKind::contract, "decomposition is rooted at " + std::to_string(dd.root) + ", not " +
                                  std::to_string(r));
  }
  if (!graft.is_terminal(r)) fail(ErrorKind::contract, "root " + std::to_string(r) + " is not a terminal");
  check_edges(graft.graph(), join);
  if (dd.distances.dist.size() != graft.vertex_count()) {
    fail(ErrorKind::contract, "decomposition does not belong to this graft");
  }

  for (VertexId v : graft.terminals()) {
    const auto& d = dd.distances.dist[v];
    if (!d || *d > 0) return reject(EligibilityFailure::t_outside_initial);
  }
  std::size_t level_zero_layers = 0;
  for (const Component& c : dd.components) {
    if (c.level == 0 && c.kind == ComponentKind::layer) ++level_zero_layers;
  }
  if (level_zero_layers != 1) return reject(EligibilityFailure::initial_disconnected, dd.initial_id);
  for (const Component& c : dd.components) {
    if (needs_head(c, dd) && c.q_children.size() != 1) {
      return reject(EligibilityFailure::multiple_q_components, c.id);
    }
  }
  return {true, std::nullopt, std::nullopt};
}

const VertexSet& HeadSet::at(std::size_t id) const {
  if (id >= computed.size() || !computed[id]) {
    fail(ErrorKind::contract, "no head set for component " + std::to_string(id));
  }
  return heads[id];
}

HeadSet head_set(const Graft& graft, const DistanceDecomposition& dd,
                 const EligibilityVerdict& verdict) {
  if (!verdict.eligible) fail(ErrorKind::contract, "head sets need an eligible system");
  const Graph& g = graft.graph();
  HeadSet out;
  out.heads.resize(dd.components.size());
  out.computed.assign(dd.components.size(), 0);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> head_owner(g.vertex_count(), kNone);
  std::vector<std::size_t> seen_child(dd.components.size(), kNone);

  // Ids grow with the level, so children are resolved before their parent.
  for (const Component& k : dd.components) {
    if (!needs_head(k, dd)) continue;
    out.computed[k.id] = 1;
    if (k.d_set.empty()) {
      out.heads[k.id] = k.vertices;
      continue;
    }
    for (std::size_t l : k.d_children) {
      for (VertexId u : out.at(l)) head_owner[u] = l;
    }
    VertexSet top_terminals;
    for (VertexId v : k.a_set) {
      if (graft.is_terminal(v)) top_terminals.push_back(v);
    }
    const std::size_t parity = k.is_cap ? 0 : 1;
    for (VertexId v : k.a_set) {
      if (top_terminals.size() > 1 || (top_terminals.size() == 1 && top_terminals.front() != v)) continue;
      if ((static_cast<std::size_t>(graft.is_terminal(v)) + k.d_children.size()) % 2 != parity) continue;
      std::size_t reached = 0;
      for (const Incidence& inc : g.incident(v)) {
        const std::size_t l = head_owner[inc.other];
        if (l == kNone || seen_child[l] == v) continue;
        seen_child[l] = v;
        ++reached;
      }
      for (std::size_t l : k.d_children) seen_child[l] = kNone;
      if (reached == k.d_children.size()) out.heads[k.id].push_back(v);
    }
    for (std::size_t l : k.d_children) {
      for (VertexId u : out.heads[l]) head_owner[u] = kNone;
    }
  }
  return out;
}

Join construct_join(const Graft& graft, const DistanceDecomposition& dd, const HeadSet& heads,
                    VertexId v) {
  const Graph& g = graft.graph();
  if (!contains(heads.at(dd.initial_id), v)) {
    fail(ErrorKind::contract, "vertex " + std::to_string(v) + " is not a head of the initial component");
  }
  Join join;
  std::vector<std::pair<std::size_t, VertexId>> stack{{dd.initial_id, v}};
  while (!stack.empty()) {
    const auto [id, hub] = stack.back();
    stack.pop_back();
    const Component& k = dd.component(id);
    for (std::size_t l : k.d_children) {
      const VertexSet& h = heads.at(l);
      std::optional<std::pair<VertexId, EdgeId>> best;
      for (const Incidence& inc : g.incident(hub)) {
        if (!contains(h, inc.other)) continue;
        if (!best || inc.other < best->first) best = std::pair(inc.other, inc.edge);
      }
      if (!best) {
        fail(ErrorKind::internal, "vertex " + std::to_string(hub) + " has no edge into the head set of component " +
                                      std::to_string(l));
      }
      join.push_back(best->second);
      if (!dd.component(l).d_set.empty()) stack.emplace_back(l, best->first);
    }
  }
  std::sort(join.begin(), join.end());
  return join;
}

std::string ConnectedJoinResult::stage_tag() const {
  if (!stage) return {};
  switch (*stage) {
    case Stage::empty_t: return "empty-T";
    case Stage::split_t: return "split-T";
    case Stage::not_eligible:
      return std::string("not-eligible:") + (eligibility.reason ? to_string(*eligibility.reason) : "UNKNOWN");
    case Stage::empty_head_set: return "empty-head-set";
  }
  return {};
}

ConnectedJoinResult connected_minimum_join(const Graft& graft) {
  if (graft.terminals().empty()) {
    ConnectedJoinResult result;
    result.stage = Stage::empty_t;
    result.eligibility = reject(EligibilityFailure::empty_t);
    return result;
  }
  return connected_minimum_join(graft, graft.terminals().front());
}

ConnectedJoinResult connected_minimum_join(const Graft& graft, VertexId root) {
  ConnectedJoinResult result;
  if (graft.terminals().empty()) {
    result.stage = Stage::empty_t;
    result.eligibility = reject(EligibilityFailure::empty_t);
    return result;
  }
  check_vertices(graft.graph(), std::span<const VertexId>(&root, 1));
  if (!graft.is_terminal(root)) fail(ErrorKind::contract, "root " + std::to_string(root) + " is not a terminal");
  result.root = root;

  const auto reach = bfs_tree(graft.graph(), root).dist;
  for (VertexId t : graft.terminals()) {
    if (reach[t] < 0) {
      result.stage = Stage::split_t;
      return result;
    }
  }

  const Join f = minimum_join(graft);
  const DistanceDecomposition dd = distance_decomposition(graft, f, root);
  result.eligibility = is_eligible(graft, f, root, dd);
  if (!result.eligibility.eligible) {
    result.stage = Stage::not_eligible;
    return result;
  }
  const HeadSet heads = head_set(graft, dd, result.eligibility);
  const VertexSet& initial_heads = heads.at(dd.initial_id);
  if (initial_heads.empty()) {
    result.stage = Stage::empty_head_set;
    return result;
  }
  result.join = construct_join(graft, dd, heads, initial_heads.front());
  if (result.join.empty()) fail(ErrorKind::internal, "constructed join is empty for a nonempty terminal set");
  if (!is_join(graft, result.join) || result.join.size() != f.size() ||
      !is_connected_edge_set(graft.graph(), result.join)) {
    fail(ErrorKind::internal, "constructed edge set is not a connected minimum join");
  }
  result.found = true;
  result.coverable = initial_heads;
  return result;
}

}  // namespace cmj
