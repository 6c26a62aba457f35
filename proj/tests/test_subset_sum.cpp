#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>
#include <vector>

#include "hyperflow/subset_sum.hpp"
#include "oracles.hpp"

using namespace hyperflow;

namespace {

std::set<Weight> achievable_set(const IsolatedDP& dp) {
  std::set<Weight> sums;
  for (Weight s = 0; s <= dp.total_weight(); ++s) {
    if (dp.achievable(s)) sums.insert(s);
  }
  return sums;
}

}  // namespace

TEST_CASE("weights 3 and 5 give four singleton ranges") {
  IsolatedDP dp;
  CHECK(dp.add_vertex(0, 3));
  CHECK(dp.add_vertex(1, 5));
  CHECK(achievable_set(dp) == std::set<Weight>{0, 3, 5, 8});
  const auto ranges = dp.ranges();
  REQUIRE(ranges.size() == 4);
  CHECK(ranges[0].lo == 0);
  CHECK(ranges[0].hi == 0);
  CHECK(ranges[1].lo == 3);
  CHECK(ranges[1].hi == 3);
  CHECK(ranges[2].lo == 5);
  CHECK(ranges[2].hi == 5);
  CHECK(ranges[3].lo == 8);
  CHECK(ranges[3].hi == 8);
}

TEST_CASE("weights 1 and 2 merge into a single range") {
  IsolatedDP dp;
  dp.add_vertex(0, 1);
  dp.add_vertex(1, 2);
  CHECK(achievable_set(dp) == std::set<Weight>{0, 1, 2, 3});
  const auto ranges = dp.ranges();
  REQUIRE(ranges.size() == 1);
  CHECK(ranges[0].lo == 0);
  CHECK(ranges[0].hi == 3);
}

TEST_CASE("empty table achieves only zero") {
  const IsolatedDP dp;
  CHECK(dp.achievable(0));
  CHECK(!dp.achievable(1));
  CHECK(dp.ranges().size() == 1);
  CHECK(dp.reconstruct(0).empty());
}

TEST_CASE("matches brute force on random weights") {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t n = rng.below(13);
    std::vector<Weight> weights(n);
    for (auto& w : weights) w = 1 + static_cast<Weight>(rng.below(30));

    IsolatedDP dp;
    for (size_t i = 0; i < n; ++i) REQUIRE(dp.add_vertex(static_cast<NodeID>(i), weights[i]));
    const std::set<Weight> expected = oracles::brute_force_subset_sum(weights);
    CHECK(achievable_set(dp) == expected);

    // Range list covers exactly the achievable sums, disjoint and sorted.
    const auto ranges = dp.ranges();
    std::set<Weight> covered;
    Weight prev_hi = -2;
    for (const auto& r : ranges) {
      CHECK(r.lo > prev_hi + 1);  // maximal: a gap separates consecutive ranges
      CHECK(r.lo <= r.hi);
      for (Weight s = r.lo; s <= r.hi; ++s) covered.insert(s);
      prev_hi = r.hi;
    }
    CHECK(covered == expected);
  }
}

TEST_CASE("window queries") {
  IsolatedDP dp;
  dp.add_vertex(0, 3);
  dp.add_vertex(1, 5);  // sums 0, 3, 5, 8
  CHECK(dp.first_achievable_in(1, 4) == 3);
  CHECK(dp.first_achievable_in(4, 4) == -1);
  CHECK(dp.first_achievable_in(6, 100) == 8);
  CHECK(dp.closest_achievable_in(0, 8, 4) == 3);
  CHECK(dp.closest_achievable_in(0, 8, 5) == 5);
  CHECK(dp.closest_achievable_in(4, 8, 0) == 5);
  CHECK(dp.closest_achievable_in(9, 20, 10) == -1);
}

TEST_CASE("reconstruct returns a subset with the requested sum") {
  Rng rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 1 + rng.below(12);
    std::vector<Weight> weights(n);
    IsolatedDP dp;
    for (size_t i = 0; i < n; ++i) {
      weights[i] = 1 + static_cast<Weight>(rng.below(25));
      dp.add_vertex(static_cast<NodeID>(i) + 100, weights[i]);
    }
    for (Weight s = 0; s <= dp.total_weight(); ++s) {
      if (!dp.achievable(s)) continue;
      const std::vector<NodeID> subset = dp.reconstruct(s);
      Weight sum = 0;
      std::set<NodeID> seen;
      for (const NodeID v : subset) {
        REQUIRE(v >= 100);
        REQUIRE(v < 100 + n);
        CHECK(seen.insert(v).second);  // no duplicates
        sum += weights[v - 100];
      }
      CHECK(sum == s);
    }
  }
}

TEST_CASE("table cap deactivates the dp") {
  IsolatedDP dp(10);
  CHECK(dp.add_vertex(0, 5));
  CHECK(dp.active());
  CHECK(!dp.add_vertex(1, 20));  // total 25 would exceed the cap
  CHECK(!dp.active());
}

TEST_CASE("contains tracks inserted members") {
  IsolatedDP dp;
  dp.add_vertex(7, 2);
  CHECK(dp.contains(7));
  CHECK(!dp.contains(8));
  CHECK(dp.num_members() == 1);
  CHECK(dp.total_weight() == 2);
}
