#pragma once

#include <vector>

#include "hyperflow/dinic.hpp"
#include "hyperflow/flow_hypergraph.hpp"
#include "hyperflow/subset_sum.hpp"
#include "hyperflow/types.hpp"

namespace hyperflow {

struct HfcConfig {
  // Weight limit per side: index 0 is the block holding the sources, index 1
  // the block holding the targets.
  Weight max_block_weight[2] = {0, 0};
  // Once the flow value exceeds this bound the run is declared infeasible.
  Flow cut_bound = kMaxFlow;
  uint64_t seed = 1;
  bool use_isolated_dp = true;
  bool use_distance = true;
  bool use_mbc = true;
  int mbc_repetitions = 7;
  size_t dp_table_cap = size_t{1} << 22;
};

struct HfcStats {
  uint64_t pierce_steps = 0;
  uint64_t flow_computations = 0;
  uint64_t isolated_vertices = 0;
  uint64_t mbc_improvements = 0;
  uint64_t balanced_fallbacks = 0;  // 1 when the run ended in the fallback
};

struct HfcResult {
  bool feasible = false;
  Flow cut_weight = 0;
  // Per flow vertex: 0 = with the sources, 1 = with the targets.
  std::vector<uint8_t> side;
  Weight block_weight[2] = {0, 0};
  HfcStats stats;
};

// The incremental cut/balance loop. Repeatedly computes a maximum flow,
// checks whether either residual cut side induces a bipartition within the
// weight limits, and otherwise grows the lighter side to its reachable set
// and pierces one boundary vertex. Piercing prefers vertices outside the
// opposite reachable set (the flow value then stays unchanged), with the
// distance from the original cut as a secondary criterion. Once a feasible
// bipartition is found, a keep-piercing sweep searches same-weight cuts for
// the least imbalanced assignment.
class HyperFlowCutter {
 public:
  // distance and origin rate piercing candidates: distance is the BFS layer
  // from the original cut, origin the side (0 or 1) the vertex came from.
  // A vertex pierced into the side it did not come from rates -1. Both
  // vectors may be empty when distance piercing is disabled.
  HyperFlowCutter(FlowHypergraph& fh, const HfcConfig& config,
                  std::vector<int32_t> distance, std::vector<uint8_t> origin);

  HfcResult run();

 private:
  struct BalanceOption {
    bool feasible = false;
    long double key = 0;  // max over the two sides of weight / limit
    int orientation = 0;  // 0: blocks (S_r | rest), 1: blocks (rest | T_r)
    Weight iso_to_side0 = 0;
    Weight block_weight[2] = {0, 0};
  };

  void init_isolated_tracking();
  void on_terminal_added(NodeID v, TerminalSide side);
  void make_isolated(NodeID v);
  void disable_dp();
  bool reachable(int side, NodeID v) const {
    return side == 0 ? solver_.in_source_reachable(v) : solver_.in_target_reachable(v);
  }
  void grow_side(int side);
  void refresh_candidates(int side);
  int rating(NodeID v, int side) const;
  // Picks a piercing vertex from the side's bucket queue and removes it.
  // With require_avoid, only vertices outside the opposite reachable set
  // qualify. Returns kInvalidNode when no candidate qualifies.
  NodeID pop_piercing(int side, bool require_avoid);
  // Last resort when piercing dead-ends without a feasible orientation:
  // discards the grown terminals, assigns the free vertices to the blocks
  // directly, and recomputes the flow with every vertex a terminal so that
  // the flow value equals the cut of the returned bipartition.
  HfcResult balanced_fallback();
  BalanceOption evaluate(int orientation) const;
  void build_result(const BalanceOption& opt, HfcResult& out) const;
  void mbc_sweep(HfcResult& best, BalanceOption best_opt);

  FlowHypergraph* fh_;
  HfcConfig cfg_;
  FlowHypergraph::TerminalState initial_terminals_;
  Weight initial_weight_[2];
  DinicSolver solver_;
  Rng rng_;
  std::vector<int32_t> distance_;
  std::vector<uint8_t> origin_;
  std::vector<std::vector<NodeID>> buckets_[2];
  std::vector<uint8_t> in_queue_[2];
  std::vector<uint8_t> edge_side_flag_[2];  // hyperedge has a pin in S / in T
  std::vector<uint32_t> both_sided_count_;  // per vertex: incident both-sided hyperedges
  std::vector<uint8_t> isolated_;
  std::vector<NodeID> isolated_list_;
  IsolatedDP dp_;
  bool dp_active_;
  bool dp_frozen_ = false;
  Weight iso_total_ = 0;
  Flow flow_ = 0;
  HfcStats stats_;
};

}  // namespace hyperflow
