#include <doctest.h>

#include "cmj/connected_join.hpp"
#include "cmj/error.hpp"
#include "cmj/oracle.hpp"
#include "support.hpp"

using namespace cmj;
using cmj::test::make_graft;

namespace {

struct Pipeline {
  Join f;
  DistanceDecomposition dd;
  EligibilityVerdict verdict;
};

Pipeline run(const Graft& g, VertexId r) {
  Pipeline p;
  p.f = minimum_join(g);
  p.dd = distance_decomposition(g, p.f, r);
  p.verdict = is_eligible(g, p.f, r, p.dd);
  return p;
}

}  // namespace

TEST_CASE("eligibility examples") {
  const Graft p3 = make_graft(3, {{0, 1}, {1, 2}}, {0, 2});
  CHECK(run(p3, 0).verdict.eligible);
  const Graft p5 = make_graft(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 1, 3, 4});
  const Pipeline p = run(p5, 0);
  CHECK_FALSE(p.verdict.eligible);
  CHECK(p.verdict.reason == EligibilityFailure::t_outside_initial);
  const Graft empty = make_graft(3, {{0, 1}, {1, 2}}, {});
  for (VertexId r = 0; r < 3; ++r) CHECK(run(empty, r).verdict.reason == EligibilityFailure::empty_t);
  CHECK(to_string(EligibilityFailure::t_outside_initial) == std::string("T_OUTSIDE_INITIAL"));
}

TEST_CASE("head sets on a path of three") {
  const Graft p3 = make_graft(3, {{0, 1}, {1, 2}}, {0, 2});
  const Pipeline p = run(p3, 0);
  const HeadSet h = head_set(p3, p.dd, p.verdict);
  CHECK(h.at(p.dd.initial_id) == VertexSet{0});
  for (const Component& c : p.dd.components) {
    if (c.kind != ComponentKind::layer || c.is_cap) continue;
    if (c.vertices == VertexSet{1, 2}) CHECK(h.at(c.id) == VertexSet{1});
    if (c.vertices == VertexSet{2}) CHECK(h.at(c.id) == VertexSet{2});
  }
  CHECK(construct_join(p3, p.dd, h, 0) == Join{0, 1});
}

TEST_CASE("head sets on a star") {
  const Graft star = make_graft(4, {{0, 1}, {0, 2}, {0, 3}}, {0, 1, 2, 3});
  const Pipeline p = run(star, 0);
  REQUIRE(p.verdict.eligible);
  CHECK(p.dd.initial().d_children.size() == 3);
  const HeadSet h = head_set(star, p.dd, p.verdict);
  CHECK(h.at(p.dd.initial_id) == VertexSet{0});
  CHECK(construct_join(star, p.dd, h, 0) == Join{0, 1, 2});
}

TEST_CASE("single child chain uses the edge to the child head") {
  const Graft edge = make_graft(2, {{0, 1}}, {0, 1});
  const Pipeline p = run(edge, 0);
  const HeadSet h = head_set(edge, p.dd, p.verdict);
  CHECK(construct_join(edge, p.dd, h, 0) == Join{0});
}

TEST_CASE("connected minimum join examples") {
  const ConnectedJoinResult p3 = connected_minimum_join(make_graft(3, {{0, 1}, {1, 2}}, {0, 2}));
  CHECK(p3.found);
  CHECK(p3.join == Join{0, 1});
  CHECK(p3.coverable == VertexSet{0});
  CHECK(p3.stage_tag().empty());

  const ConnectedJoinResult p5 =
      connected_minimum_join(make_graft(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 1, 3, 4}));
  CHECK_FALSE(p5.found);
  CHECK(p5.stage_tag() == "not-eligible:T_OUTSIDE_INITIAL");

  const ConnectedJoinResult empty = connected_minimum_join(make_graft(3, {{0, 1}, {1, 2}}, {}));
  CHECK_FALSE(empty.found);
  CHECK(empty.stage_tag() == "empty-T");

  const Graft c4 = make_graft(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {0, 2});
  const ConnectedJoinResult cycle = connected_minimum_join(c4);
  CHECK(cycle.found);
  CHECK(cycle.join.size() == 2);
  CHECK(is_join(c4, cycle.join));
  CHECK(is_connected_edge_set(c4.graph(), cycle.join));
}

TEST_CASE("terminals in two components give split-T") {
  const ConnectedJoinResult r = connected_minimum_join(make_graft(4, {{0, 1}, {2, 3}}, {0, 1, 2, 3}));
  CHECK_FALSE(r.found);
  CHECK(r.stage_tag() == "split-T");
}

TEST_CASE("K33 with all vertices terminal answers no") {
  const Graft k33 = make_graft(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}},
                               {0, 1, 2, 3, 4, 5});
  const ConnectedJoinResult r = connected_minimum_join(k33);
  CHECK_FALSE(r.found);
  CHECK_FALSE(oracle_report(k33).has_connected);
}

TEST_CASE("rooted run requires a terminal root") {
  const Graft p3 = make_graft(3, {{0, 1}, {1, 2}}, {0, 2});
  CHECK_THROWS_AS(connected_minimum_join(p3, 1), Error);
  CHECK(connected_minimum_join(p3, 2).found);
}

TEST_CASE("decision and coverable set agree with the oracle on random grafts") {
  for (std::uint64_t seed = 1000; seed < 1300; ++seed) {
    const Graft g = cmj::test::random_connected_graft(seed);
    const OracleReport oracle = oracle_report(g);
    const ConnectedJoinResult r = connected_minimum_join(g);
    CHECK_MESSAGE(r.found == oracle.has_connected, "seed " << seed);
    if (!r.found) continue;
    CHECK(is_join(g, r.join));
    CHECK(r.join.size() == oracle.nu);
    CHECK(is_connected_edge_set(g.graph(), r.join));
    for (VertexId v : r.coverable) CHECK(contains(oracle.coverable, v));
  }
}
