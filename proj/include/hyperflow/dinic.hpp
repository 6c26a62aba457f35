#pragma once

#include <vector>

#include "hyperflow/flow_hypergraph.hpp"
#include "hyperflow/types.hpp"

namespace hyperflow {

// Maximum-flow solver operating directly on a FlowHypergraph: Dinic's
// algorithm with capacity scaling. Each BFS phase assigns hop-distance labels
// to vertices and two labels per hyperedge: one for entry across the
// unsaturated bridge (all pins reachable) and one for entry restricted to the
// flow-sending subrange. The DFS phase then routes blocking flow along
// admissible label increments.
//
// The solver also computes residual reachability: S_r forward from the source
// terminals, T_r backward from the target terminals, and the corresponding
// cut hyperedge sets.
class DinicSolver {
 public:
  enum class Direction : uint8_t { Forward, Backward };

  explicit DinicSolver(FlowHypergraph& fh);

  // Augments until no residual path between the terminal sides remains.
  // Seeds the search from all terminals of the pushing side.
  Flow exhaust_flow();

  // Same result as exhaust_flow, but the search is seeded only at the last
  // piercing vertex p, which must already be a terminal. If p joined the
  // source side, the search runs forward; if it joined the target side, it
  // runs backward toward the sources.
  Flow restart_from_piercing(NodeID p);

  // Residual reachability at maximum flow (always with unit-scale
  // semantics). Recomputes flags, side weights, cut hyperedges, and records
  // the hop labels of the traversal for reuse by the next DFS phase.
  void compute_source_reachable();
  void compute_target_reachable();

  bool in_source_reachable(NodeID v) const { return sr_[v] != 0; }
  bool in_target_reachable(NodeID v) const { return tr_[v] != 0; }
  Weight source_reachable_weight() const { return sr_weight_; }
  Weight target_reachable_weight() const { return tr_weight_; }
  const std::vector<HyperedgeID>& source_cut() const { return source_cut_; }
  const std::vector<HyperedgeID>& target_cut() const { return target_cut_; }
  Flow cut_weight(const std::vector<HyperedgeID>& cut) const;

  // True iff a residual S-T path exists (unit scale). Used by audits.
  bool has_augmenting_path();

  struct ReachabilityState {
    std::vector<uint8_t> sr, tr;
    std::vector<HyperedgeID> source_cut, target_cut;
    Weight sr_weight, tr_weight;
  };
  ReachabilityState save_reachability() const {
    return {sr_, tr_, source_cut_, target_cut_, sr_weight_, tr_weight_};
  }
  void restore_reachability(ReachabilityState s) {
    sr_ = std::move(s.sr);
    tr_ = std::move(s.tr);
    source_cut_ = std::move(s.source_cut);
    target_cut_ = std::move(s.target_cut);
    sr_weight_ = s.sr_weight;
    tr_weight_ = s.tr_weight;
  }

 private:
  // Routes one unit of flow along an explicit residual Lawler walk. Covers
  // the rare augmenting paths that traverse the in-node and out-node of the
  // same hyperedge at two separate points, which the blocking-flow DFS skips
  // because it keeps path hyperedges distinct.
  Flow augment_one_lawler_unit();
  bool bfs(Direction dir, const std::vector<NodeID>& seeds, Flow scale);
  Flow blocking_flow(Direction dir, const std::vector<NodeID>& seeds, Flow scale);
  Flow exhaust(Direction dir, const std::vector<NodeID>& seeds);
  void reachability(Direction dir, std::vector<uint8_t>& flags, Weight& weight);
  void collect_cuts();
  bool opposite_terminal(Direction dir, NodeID v) const {
    return dir == Direction::Forward ? fh_->is_target(v) : fh_->is_source(v);
  }

  FlowHypergraph* fh_;
  std::vector<int32_t> dist_v_;
  std::vector<int32_t> dist_e_all_;
  std::vector<int32_t> dist_e_restricted_;
  std::vector<Flow> best_base_;
  std::vector<NodeID> queue_;
  std::vector<uint32_t> incidence_cursor_;
  std::vector<uint8_t> sr_, tr_;
  std::vector<uint8_t> edge_on_path_;
  std::vector<HyperedgeID> source_cut_, target_cut_;
  Weight sr_weight_ = 0, tr_weight_ = 0;
};

}  // namespace hyperflow
