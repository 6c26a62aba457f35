#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <vector>

#include "hyperflow/flow_hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperflow;

namespace {

// Edge {u=0, v=1, a=2, b=3} with capacity 10, prepared so that
// f(e)=10, pin flow of u is -4 and of v is +6.
FlowHypergraph rerouting_state() {
  FlowHypergraph fh({1, 1, 1, 1}, {10}, {{0, 1, 2, 3}});
  fh.push(1, 0, 3, 6);  // v sends 6 to b
  fh.push(2, 0, 0, 4);  // a sends 4 to u
  return fh;
}

std::vector<Flow> pin_flow_snapshot(const FlowHypergraph& fh, HyperedgeID e) {
  std::vector<Flow> by_vertex(fh.num_vertices(), 0);
  for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) {
    by_vertex[fh.pin(i).v] = fh.pin_flow(i);
  }
  return by_vertex;
}

// Applies random valid pushes to produce an arbitrary (non-conserving) state.
void randomize_flow(FlowHypergraph& fh, Rng& rng, int pushes) {
  for (int i = 0; i < pushes; ++i) {
    const HyperedgeID e = static_cast<HyperedgeID>(rng.below(fh.num_hyperedges()));
    if (fh.hyperedge_size(e) < 2) continue;
    const uint32_t u = fh.pins_begin(e) + static_cast<uint32_t>(rng.below(fh.hyperedge_size(e)));
    uint32_t v = u;
    while (v == u) v = fh.pins_begin(e) + static_cast<uint32_t>(rng.below(fh.hyperedge_size(e)));
    const Flow res = fh.residual_capacity(u, v);
    if (res <= 0) continue;
    fh.push(u, v, 1 + static_cast<Flow>(rng.below(static_cast<uint64_t>(res))));
  }
}

}  // namespace

TEST_CASE("residual capacity, empty hyperedge") {
  const FlowHypergraph fh({1, 1}, {10}, {{0, 1}});
  CHECK(fh.residual_capacity(0, 0, 1) == 10);
  CHECK(fh.residual_capacity(1, 0, 0) == 10);
}

TEST_CASE("residual capacity with reroutable pin flow") {
  const FlowHypergraph fh = rerouting_state();
  CHECK(fh.flow(0) == 10);
  CHECK(fh.pin_flow_of(0, 0) == -4);
  CHECK(fh.pin_flow_of(1, 0) == 6);
  CHECK(fh.residual_capacity(0, 0, 1) == 10);  // 0 + 4 + 6
}

TEST_CASE("residual capacity, saturated with no reroutable flow") {
  FlowHypergraph fh({1, 1, 1}, {10}, {{0, 1, 2}});
  fh.push(0, 0, 1, 10);
  CHECK(fh.residual_capacity(0, 0, 2) == 0);
  CHECK(fh.residual_capacity(2, 0, 0) == 10);  // can take over the sender's flow
}

TEST_CASE("push on fresh hyperedge goes across the bridge") {
  FlowHypergraph fh({1, 1, 1}, {10}, {{0, 1, 2}});
  fh.push(0, 0, 1, 5);
  CHECK(fh.flow(0) == 5);
  CHECK(fh.pin_flow_of(0, 0) == 5);
  CHECK(fh.pin_flow_of(1, 0) == -5);
  CHECK(fh.pin_flow_of(2, 0) == 0);
  fh.verify_invariants(false);
}

TEST_CASE("full-residual push reroutes before adding fresh flow") {
  FlowHypergraph fh = rerouting_state();
  fh.set_audit_level(2);  // exercise the reverse-restore audit too
  fh.push(0, 0, 1, 10);
  CHECK(fh.flow(0) == 10);
  CHECK(fh.pin_flow_of(0, 0) == 6);
  CHECK(fh.pin_flow_of(1, 0) == -4);
  CHECK(fh.pin_flow_of(2, 0) == 4);
  CHECK(fh.pin_flow_of(3, 0) == -6);
  fh.verify_invariants(false);
}

TEST_CASE("push moves exactly delta between the two pins") {
  Rng rng(42);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 200; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    randomize_flow(fh, rng, 20);
    const HyperedgeID e = static_cast<HyperedgeID>(rng.below(fh.num_hyperedges()));
    if (fh.hyperedge_size(e) < 2) continue;
    const NodeID u = fh.pin(fh.pins_begin(e)).v;
    const NodeID v = fh.pin(fh.pins_begin(e) + 1).v;
    const Flow res = fh.residual_capacity(u, e, v);
    if (res <= 0) continue;
    const Flow delta = 1 + static_cast<Flow>(rng.below(static_cast<uint64_t>(res)));
    const std::vector<Flow> before = pin_flow_snapshot(fh, e);
    fh.push(u, e, v, delta);
    const std::vector<Flow> after = pin_flow_snapshot(fh, e);
    CHECK(after[u] - before[u] == delta);
    CHECK(before[v] - after[v] == delta);
    for (NodeID w = 0; w < fh.num_vertices(); ++w) {
      if (w != u && w != v) CHECK(after[w] == before[w]);
    }
    fh.verify_invariants(false);
  }
}

TEST_CASE("push is inverted by the reverse push") {
  Rng rng(7);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 200; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    randomize_flow(fh, rng, 15);
    for (HyperedgeID e = 0; e < fh.num_hyperedges(); ++e) {
      if (fh.hyperedge_size(e) < 2) continue;
      const NodeID u = fh.pin(fh.pins_begin(e)).v;
      const NodeID v = fh.pin(fh.pins_end(e) - 1).v;
      const Flow res = fh.residual_capacity(u, e, v);
      if (res <= 0) continue;
      const Flow f_before = fh.flow(e);
      const std::vector<Flow> before = pin_flow_snapshot(fh, e);
      fh.push(u, e, v, res);
      fh.push(v, e, u, res);
      CHECK(fh.flow(e) == f_before);
      CHECK(pin_flow_snapshot(fh, e) == before);
    }
  }
}

TEST_CASE("invariants hold after random push sequences") {
  Rng rng(99);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 100; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    randomize_flow(fh, rng, 50);
    fh.verify_invariants(false);
  }
}

TEST_CASE("pushable pin scan, saturated hyperedge with neutral entering pin") {
  std::vector<NodeID> pins(100);
  for (NodeID v = 0; v < 100; ++v) pins[v] = v;
  std::vector<Weight> weights(100, 1);
  FlowHypergraph fh(std::move(weights), {3}, {pins});
  fh.push(5, 0, 6, 3);  // saturate; pin 5 is the only sender
  std::vector<NodeID> yielded;
  fh.for_pushable_pins(0, fh.find_pin(0, 7), [&](uint32_t i) { yielded.push_back(fh.pin(i).v); });
  REQUIRE(yielded.size() == 1);
  CHECK(yielded[0] == 5);
}

TEST_CASE("pushable pin scan, unsaturated hyperedge yields all others") {
  FlowHypergraph fh({1, 1, 1, 1}, {5}, {{0, 1, 2, 3}});
  fh.push(0, 0, 1, 2);
  std::set<NodeID> yielded;
  fh.for_pushable_pins(0, fh.find_pin(0, 2), [&](uint32_t i) { yielded.insert(fh.pin(i).v); });
  CHECK(yielded == std::set<NodeID>{0, 1, 3});
}

TEST_CASE("pushable pin scan, receiving entering pin can reroute") {
  FlowHypergraph fh({1, 1, 1}, {2}, {{0, 1, 2}});
  fh.push(0, 0, 1, 2);  // saturated, pin 1 receives 2
  std::set<NodeID> yielded;
  fh.for_pushable_pins(0, fh.find_pin(0, 1), [&](uint32_t i) { yielded.insert(fh.pin(i).v); });
  CHECK(yielded == std::set<NodeID>{0, 2});
}

TEST_CASE("pushable pin scan matches residual capacities exhaustively") {
  Rng rng(1234);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 100; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    randomize_flow(fh, rng, 30);
    for (HyperedgeID e = 0; e < fh.num_hyperedges(); ++e) {
      for (uint32_t enter = fh.pins_begin(e); enter < fh.pins_end(e); ++enter) {
        std::set<uint32_t> yielded;
        fh.for_pushable_pins(e, enter, [&](uint32_t i) { yielded.insert(i); });
        for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) {
          if (i == enter) continue;
          CHECK(yielded.count(i) == (fh.residual_capacity(enter, i) > 0 ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("pulling pin scan mirrors residual capacities toward the entering pin") {
  Rng rng(4321);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 50; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    randomize_flow(fh, rng, 30);
    for (HyperedgeID e = 0; e < fh.num_hyperedges(); ++e) {
      for (uint32_t enter = fh.pins_begin(e); enter < fh.pins_end(e); ++enter) {
        std::set<uint32_t> yielded;
        fh.for_pulling_pins(e, enter, [&](uint32_t i) { yielded.insert(i); });
        for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) {
          if (i == enter) continue;
          CHECK(yielded.count(i) == (fh.residual_capacity(i, enter) > 0 ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("terminal state snapshot and restore") {
  FlowHypergraph fh({2, 3, 4}, {1}, {{0, 1, 2}});
  fh.add_terminal(0, TerminalSide::Source);
  const auto snapshot = fh.save_terminal_state();
  fh.add_terminal(1, TerminalSide::Target);
  fh.add_terminal(2, TerminalSide::Source);
  CHECK(fh.source_weight() == 6);
  fh.restore_terminal_state(snapshot);
  CHECK(fh.source_weight() == 2);
  CHECK(fh.target_weight() == 0);
  CHECK(fh.is_source(0));
  CHECK(!fh.is_terminal(1));
  CHECK(!fh.is_terminal(2));
}
