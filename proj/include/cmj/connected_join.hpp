#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cmj/decomposition.hpp"

namespace cmj {

enum class EligibilityFailure { empty_t, t_outside_initial, initial_disconnected, multiple_q_components };

// EMPTY_T, T_OUTSIDE_INITIAL, INITIAL_DISCONNECTED, MULTIPLE_Q_COMPONENTS
const char* to_string(EligibilityFailure failure) noexcept;

struct EligibilityVerdict {
  bool eligible = false;
  std::optional<EligibilityFailure> reason;
  std::optional<std::size_t> component;  // offending component for MULTIPLE_Q_COMPONENTS
};

// Checks run in the order EMPTY_T, T_OUTSIDE_INITIAL, INITIAL_DISCONNECTED,
// MULTIPLE_Q_COMPONENTS. Throws contract if dd is not rooted at r or r is not
// a terminal of a nonempty T.
EligibilityVerdict is_eligible(const Graft& graft, std::span<const EdgeId> join, VertexId r,
                               const DistanceDecomposition& dd);

// h(K) for every non-cap layer component and for the initial component,
// indexed by component id; other entries stay empty.
struct HeadSet {
  std::vector<VertexSet> heads;
  std::vector<char> computed;

  const VertexSet& at(std::size_t id) const;
};

HeadSet head_set(const Graft& graft, const DistanceDecomposition& dd,
                 const EligibilityVerdict& verdict);

// Connected minimum join covering v, built along the d_children tree.
Join construct_join(const Graft& graft, const DistanceDecomposition& dd, const HeadSet& heads,
                    VertexId v);

enum class Stage { empty_t, split_t, not_eligible, empty_head_set };

struct ConnectedJoinResult {
  bool found = false;
  std::optional<VertexId> root;
  Join join;              // connected minimum join when found
  VertexSet coverable;    // h(initial) when found
  std::optional<Stage> stage;
  EligibilityVerdict eligibility;

  // empty-T | split-T | not-eligible:<reason> | empty-head-set; empty when found.
  std::string stage_tag() const;
};

// Decision and construction with r = smallest terminal.
ConnectedJoinResult connected_minimum_join(const Graft& graft);

// Same with an explicit root r in T.
ConnectedJoinResult connected_minimum_join(const Graft& graft, VertexId root);

}  // namespace cmj
