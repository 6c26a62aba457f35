#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hyperflow/dinic.hpp"
#include "hyperflow/flow_hypergraph.hpp"
#include "oracles.hpp"

using namespace hyperflow;

namespace {

Flow max_flow(FlowHypergraph& fh) {
  DinicSolver solver(fh);
  return solver.exhaust_flow();
}

std::vector<uint8_t> reachable_flags(DinicSolver& solver, const FlowHypergraph& fh, bool source) {
  std::vector<uint8_t> flags(fh.num_vertices());
  for (NodeID v = 0; v < fh.num_vertices(); ++v) {
    flags[v] = source ? solver.in_source_reachable(v) : solver.in_target_reachable(v);
  }
  return flags;
}

}  // namespace

TEST_CASE("single bottleneck hyperedge") {
  FlowHypergraph fh({1, 1}, {7}, {{0, 1}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(1, TerminalSide::Target);
  CHECK(max_flow(fh) == 7);
  fh.verify_invariants();
}

TEST_CASE("series bottleneck") {
  FlowHypergraph fh({1, 1, 1}, {5, 3}, {{0, 1}, {1, 2}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(2, TerminalSide::Target);
  CHECK(max_flow(fh) == 3);
  fh.verify_invariants();
}

TEST_CASE("flow value matches the Lawler network oracle") {
  Rng rng(2024);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 300; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    const Flow expected = oracles::lawler_max_flow(fh);
    DinicSolver solver(fh);
    CHECK(solver.exhaust_flow() == expected);
    CHECK(!solver.has_augmenting_path());
    fh.verify_invariants();
  }
}

TEST_CASE("both cut sides weigh exactly the flow value") {
  Rng rng(31);
  oracles::RandomInstanceOptions opt;
  for (int i = 0; i < 200; ++i) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    DinicSolver solver(fh);
    const Flow f = solver.exhaust_flow();
    solver.compute_source_reachable();
    solver.compute_target_reachable();
    CHECK(solver.cut_weight(solver.source_cut()) == f);
    CHECK(solver.cut_weight(solver.target_cut()) == f);
    for (NodeID v = 0; v < fh.num_vertices(); ++v) {
      CHECK(!(solver.in_source_reachable(v) && solver.in_target_reachable(v)));
    }
  }
}

TEST_CASE("zero flow reachability spans everything but the far side") {
  // Path s - a - b - t, no flow pushed yet.
  FlowHypergraph fh({1, 1, 1, 1}, {2, 2, 2}, {{0, 1}, {1, 2}, {2, 3}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(3, TerminalSide::Target);
  DinicSolver solver(fh);
  solver.compute_source_reachable();
  CHECK(solver.in_source_reachable(0));
  CHECK(solver.in_source_reachable(1));
  CHECK(solver.in_source_reachable(2));
  CHECK(!solver.in_source_reachable(3));
  CHECK(solver.source_reachable_weight() == 3);
}

TEST_CASE("piercing outside the opposite reachable set adds no flow") {
  // Two parallel unit paths; after max flow both are saturated.
  FlowHypergraph fh({1, 1, 1, 1}, {1, 1, 1, 1}, {{0, 1}, {1, 3}, {0, 2}, {2, 3}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(3, TerminalSide::Target);
  DinicSolver solver(fh);
  CHECK(solver.exhaust_flow() == 2);
  solver.compute_target_reachable();
  CHECK(!solver.in_target_reachable(1));
  fh.add_terminal(1, TerminalSide::Source);
  CHECK(solver.restart_from_piercing(1) == 0);
}

TEST_CASE("piercing inside the opposite reachable set augments") {
  // s - a via cap 1, a - t via cap 3: a is target-reachable at max flow.
  FlowHypergraph fh({1, 1, 1}, {1, 3}, {{0, 1}, {1, 2}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(2, TerminalSide::Target);
  DinicSolver solver(fh);
  CHECK(solver.exhaust_flow() == 1);
  solver.compute_target_reachable();
  CHECK(solver.in_target_reachable(1));
  fh.add_terminal(1, TerminalSide::Source);
  CHECK(solver.restart_from_piercing(1) == 2);
}

TEST_CASE("restart from piercing equals recomputation from scratch") {
  Rng rng(555);
  oracles::RandomInstanceOptions opt;
  opt.max_vertices = 16;
  opt.max_hyperedges = 20;
  int sequences = 0;
  while (sequences < 150) {
    FlowHypergraph fh = oracles::random_flow_problem(rng, opt);
    DinicSolver solver(fh);
    Flow flow = solver.exhaust_flow();
    ++sequences;
    // Pierce random non-terminal vertices one at a time, alternating sides.
    for (int step = 0; step < 6; ++step) {
      std::vector<NodeID> free;
      for (NodeID v = 0; v < fh.num_vertices(); ++v) {
        if (!fh.is_terminal(v)) free.push_back(v);
      }
      if (free.size() <= 1) break;
      const NodeID p = free[rng.below(free.size())];
      const TerminalSide side = step % 2 == 0 ? TerminalSide::Source : TerminalSide::Target;

      FlowHypergraph fresh = fh;  // same terminals, zero flow
      fresh.reset_flow();
      fresh.add_terminal(p, side);
      DinicSolver scratch(fresh);
      const Flow from_scratch = scratch.exhaust_flow();

      fh.add_terminal(p, side);
      flow += solver.restart_from_piercing(p);
      CHECK(flow == from_scratch);

      solver.compute_source_reachable();
      solver.compute_target_reachable();
      scratch.compute_source_reachable();
      scratch.compute_target_reachable();
      CHECK(reachable_flags(solver, fh, true) == reachable_flags(scratch, fresh, true));
      CHECK(reachable_flags(solver, fh, false) == reachable_flags(scratch, fresh, false));
      fh.verify_invariants();
    }
  }
}

TEST_CASE("reachability snapshot and restore") {
  FlowHypergraph fh({1, 1, 1}, {1, 3}, {{0, 1}, {1, 2}});
  fh.add_terminal(0, TerminalSide::Source);
  fh.add_terminal(2, TerminalSide::Target);
  DinicSolver solver(fh);
  solver.exhaust_flow();
  solver.compute_source_reachable();
  solver.compute_target_reachable();
  const auto snapshot = solver.save_reachability();
  const auto sr = reachable_flags(solver, fh, true);
  const auto tr = reachable_flags(solver, fh, false);

  fh.add_terminal(1, TerminalSide::Source);
  solver.restart_from_piercing(1);
  solver.compute_source_reachable();
  solver.compute_target_reachable();
  CHECK(reachable_flags(solver, fh, true) != sr);

  solver.restore_reachability(snapshot);
  CHECK(reachable_flags(solver, fh, true) == sr);
  CHECK(reachable_flags(solver, fh, false) == tr);
}
