#include <doctest.h>

#include <random>

#include "cmj/error.hpp"
#include "cmj/matching.hpp"
#include "cmj/oracle.hpp"
#include "cmj/tjoin.hpp"
#include "support.hpp"

using namespace cmj;
using cmj::test::make_graft;
using cmj::test::make_graph;

TEST_CASE("validate graft") {
  CHECK_NOTHROW(make_graft(3, {{0, 1}, {1, 2}}, {0, 2}));
  CHECK_THROWS_AS(make_graft(1, {}, {0}), Error);
  CHECK_NOTHROW(make_graft(4, {{0, 1}, {2, 3}}, {0, 1, 2, 3}));
  try {
    make_graft(4, {{0, 1}, {2, 3}}, {0, 2});
    FAIL("odd component accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_join);
  }
}

TEST_CASE("is_join") {
  const Graft p3 = make_graft(3, {{0, 1}, {1, 2}}, {0, 2});
  CHECK(is_join(p3, EdgeSet{0, 1}));
  CHECK_FALSE(is_join(p3, EdgeSet{0}));
  const Graft empty = make_graft(3, {{0, 1}, {1, 2}}, {});
  CHECK(is_join(empty, EdgeSet{}));
}

TEST_CASE("perfect matching examples") {
  WeightMatrix two(2);
  two.set(0, 1, 5);
  const PerfectMatching m2 = min_weight_perfect_matching(two);
  CHECK(m2.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK(m2.weight == 5);

  WeightMatrix four(4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) four.set(i, j, 10);
  }
  four.set(0, 1, 1);
  four.set(2, 3, 1);
  const PerfectMatching m4 = min_weight_perfect_matching(four);
  CHECK(m4.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}});
  CHECK(m4.weight == 2);

  const PerfectMatching m0 = min_weight_perfect_matching(WeightMatrix(0));
  CHECK(m0.pairs.empty());
  CHECK(m0.weight == 0);
}

TEST_CASE("blossom agrees with subset DP on random matrices") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 300; ++round) {
    const std::size_t k = 2 * (1 + rng() % 6);
    WeightMatrix w(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) w.set(i, j, static_cast<std::int64_t>(rng() % 12));
    }
    const PerfectMatching blossom = min_weight_perfect_matching(w);
    const PerfectMatching dp = min_weight_perfect_matching_dp(w);
    CHECK(blossom.weight == dp.weight);
    CHECK(blossom.pairs == dp.pairs);
  }
}

TEST_CASE("minimum join examples") {
  const Graft p3 = make_graft(3, {{0, 1}, {1, 2}}, {0, 2});
  CHECK(minimum_join(p3) == Join{0, 1});
  CHECK(nu(p3) == 2);
  const Graft empty = make_graft(3, {{0, 1}, {1, 2}}, {});
  CHECK(minimum_join(empty).empty());
  CHECK(nu(empty) == 0);
  const Graft p5 = make_graft(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0, 1, 3, 4});
  CHECK(minimum_join(p5) == Join{0, 3});
  const Graft star = make_graft(4, {{0, 1}, {0, 2}, {0, 3}}, {0, 1, 2, 3});
  CHECK(nu(star) == 3);
}

TEST_CASE("K33 with all vertices terminal needs a perfect matching") {
  const Graft k33 = make_graft(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}},
                               {0, 1, 2, 3, 4, 5});
  CHECK(nu(k33) == 3);
  CHECK(oracle_report(k33).nu == 3);
}

TEST_CASE("minimum join matches the oracle on random grafts") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Graft g = cmj::test::random_connected_graft(seed);
    const Join f = minimum_join(g);
    CHECK(is_join(g, f));
    CHECK(f.size() == oracle_report(g).nu);
    CHECK(nu(g) == f.size());
  }
}

TEST_CASE("minimum join on a disconnected graft") {
  const Graft g = make_graft(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}}, {0, 2, 3, 4});
  const Join f = minimum_join(g);
  CHECK(is_join(g, f));
  CHECK(f.size() == 3);
}
