#pragma once

#include <cassert>
#include <span>
#include <vector>

#include "hyperflow/types.hpp"

namespace hyperflow {

enum class TerminalSide : uint8_t { None = 0, Source = 1, Target = 2 };

// Mutable flow state over an extracted subhypergraph. Stores the flow f(e)
// per hyperedge and the pin flow per pin (negative = the pin receives flow
// from the hyperedge). The pins of every hyperedge are kept partitioned into
// three contiguous subranges by sign of their pin flow:
//   [begin, receiving_end)      pin flow < 0
//   [receiving_end, sending_begin)  pin flow = 0
//   [sending_begin, end)        pin flow > 0
// Moving a pin between adjacent subranges is an O(1) swap with the range
// boundary; each pin slot carries a back pointer into the vertex incidence
// array so positions stay navigable from both directions.
class FlowHypergraph {
 public:
  struct Pin {
    NodeID v;
    uint32_t incidence_index;  // index into incidences_
  };
  struct Incidence {
    HyperedgeID e;
    uint32_t pin_index;  // index into pins_
  };

  FlowHypergraph() = default;
  FlowHypergraph(std::vector<Weight> vertex_weights, std::vector<Flow> capacities,
                 const std::vector<std::vector<NodeID>>& edge_pins);

  NodeID num_vertices() const { return static_cast<NodeID>(vertex_weight_.size()); }
  HyperedgeID num_hyperedges() const { return static_cast<HyperedgeID>(capacity_.size()); }
  size_t num_pins() const { return pins_.size(); }

  Weight vertex_weight(NodeID v) const { return vertex_weight_[v]; }
  Weight total_vertex_weight() const { return total_vertex_weight_; }
  Flow capacity(HyperedgeID e) const { return capacity_[e]; }
  Flow flow(HyperedgeID e) const { return flow_[e]; }
  Flow max_capacity() const { return max_capacity_; }

  uint32_t pins_begin(HyperedgeID e) const { return edge_offsets_[e]; }
  uint32_t pins_end(HyperedgeID e) const { return edge_offsets_[e + 1]; }
  uint32_t receiving_end(HyperedgeID e) const { return receiving_end_[e]; }
  uint32_t sending_begin(HyperedgeID e) const { return sending_begin_[e]; }
  const Pin& pin(uint32_t pin_index) const { return pins_[pin_index]; }
  Flow pin_flow(uint32_t pin_index) const { return pin_flow_[pin_index]; }

  std::span<const Incidence> incidences(NodeID v) const {
    return {incidences_.data() + vertex_offsets_[v], vertex_offsets_[v + 1] - vertex_offsets_[v]};
  }
  size_t degree(NodeID v) const { return vertex_offsets_[v + 1] - vertex_offsets_[v]; }
  size_t hyperedge_size(HyperedgeID e) const { return pins_end(e) - pins_begin(e); }

  // Locates the pin slot of vertex v in hyperedge e by scanning e's pins.
  uint32_t find_pin(HyperedgeID e, NodeID v) const;
  Flow pin_flow_of(NodeID v, HyperedgeID e) const { return pin_flow_[find_pin(e, v)]; }

  // Maximum flow pushable from the pin at u_idx via its hyperedge to the pin
  // at v_idx: c(e) - f(e) + max(-f(u,e), 0) + max(f(v,e), 0).
  Flow residual_capacity(uint32_t u_idx, uint32_t v_idx) const {
    const HyperedgeID e = pin_to_edge_[u_idx];
    assert(pin_to_edge_[v_idx] == e);
    return capacity_[e] - flow_[e] + positive(-pin_flow_[u_idx]) + positive(pin_flow_[v_idx]);
  }
  Flow residual_capacity(NodeID u, HyperedgeID e, NodeID v) const {
    return residual_capacity(find_pin(e, u), find_pin(e, v));
  }

  // Pushes delta units from pin u_idx via its hyperedge to pin v_idx, in the
  // four sequential steps that keep f(e) consistent. Pin subranges are
  // repaired by boundary swaps, so both slots may move; use incidence back
  // pointers if positions are needed afterwards. delta must not exceed the
  // residual capacity (assertion, not a recoverable error).
  void push(uint32_t u_idx, uint32_t v_idx, Flow delta);
  void push(NodeID u, HyperedgeID e, NodeID v, Flow delta) {
    push(find_pin(e, u), find_pin(e, v), delta);
  }

  // Calls fn(pin_index) for exactly the pins of e to which positive flow can
  // be pushed from the entering pin. When the hyperedge is saturated and the
  // entering pin sends no flow into it, only the flow-sending subrange is
  // scanned.
  template <typename F>
  void for_pushable_pins(HyperedgeID e, uint32_t entering_idx, F&& fn) const {
    const bool all = capacity_[e] - flow_[e] > 0 || pin_flow_[entering_idx] < 0;
    const uint32_t begin = all ? pins_begin(e) : sending_begin_[e];
    for (uint32_t i = begin; i < pins_end(e); ++i) {
      if (i != entering_idx) fn(i);
    }
  }

  // Mirror image for the backward search: pins of e from which flow can be
  // pushed to the entering pin.
  template <typename F>
  void for_pulling_pins(HyperedgeID e, uint32_t entering_idx, F&& fn) const {
    const bool all = capacity_[e] - flow_[e] > 0 || pin_flow_[entering_idx] > 0;
    const uint32_t end = all ? pins_end(e) : receiving_end_[e];
    for (uint32_t i = pins_begin(e); i < end; ++i) {
      if (i != entering_idx) fn(i);
    }
  }

  // Terminals. Vertices absorbed at extraction time are represented by super
  // vertices carrying the aggregated weight; flow conservation is exempted
  // exactly at terminal vertices.
  TerminalSide terminal_side(NodeID v) const { return terminal_[v]; }
  bool is_source(NodeID v) const { return terminal_[v] == TerminalSide::Source; }
  bool is_target(NodeID v) const { return terminal_[v] == TerminalSide::Target; }
  bool is_terminal(NodeID v) const { return terminal_[v] != TerminalSide::None; }
  void add_terminal(NodeID v, TerminalSide side);
  Weight source_weight() const { return source_weight_; }
  Weight target_weight() const { return target_weight_; }
  const std::vector<NodeID>& source_vertices() const { return source_vertices_; }
  const std::vector<NodeID>& target_vertices() const { return target_vertices_; }

  void reset_flow();

  // Snapshot of the terminal assignment only (flow state is unaffected).
  // Used by sweeps that explore piercing sequences and roll back.
  struct TerminalState {
    std::vector<TerminalSide> terminal;
    std::vector<NodeID> source_vertices;
    std::vector<NodeID> target_vertices;
    Weight source_weight;
    Weight target_weight;
  };
  TerminalState save_terminal_state() const {
    return {terminal_, source_vertices_, target_vertices_, source_weight_, target_weight_};
  }
  void restore_terminal_state(TerminalState s) {
    terminal_ = std::move(s.terminal);
    source_vertices_ = std::move(s.source_vertices);
    target_vertices_ = std::move(s.target_vertices);
    source_weight_ = s.source_weight;
    target_weight_ = s.target_weight;
  }

  // Audit levels: 0 = none, 1 = full invariant check after every push,
  // 2 = additionally verify that push followed by its reverse restores all
  // f and pin-flow values before redoing the push.
  void set_audit_level(int level) { audit_level_ = level; }
  int audit_level() const { return audit_level_; }

  // Checks f(e) = sum of positive pin flows = sum of negative pin flows,
  // 0 <= f(e) <= c(e), subrange membership by sign, incidence back pointers,
  // and flow conservation at non-terminals. Conservation can be skipped: it
  // only holds between complete path augmentations, not after every push.
  // Throws std::logic_error.
  void verify_invariants(bool check_conservation = true) const;

 private:
  static Flow positive(Flow x) { return x > 0 ? x : 0; }
  void push_impl(uint32_t u_idx, uint32_t v_idx, Flow delta);
  void swap_pins(uint32_t a, uint32_t b);
  // Moves the pin at idx into the subrange matching the sign of its flow.
  void restore_subrange(HyperedgeID e, uint32_t idx);

  std::vector<uint32_t> edge_offsets_;
  std::vector<Pin> pins_;
  std::vector<Flow> pin_flow_;
  std::vector<HyperedgeID> pin_to_edge_;
  std::vector<uint32_t> receiving_end_;
  std::vector<uint32_t> sending_begin_;
  std::vector<uint32_t> vertex_offsets_;
  std::vector<Incidence> incidences_;
  std::vector<Weight> vertex_weight_;
  std::vector<Flow> capacity_;
  std::vector<Flow> flow_;
  std::vector<TerminalSide> terminal_;
  std::vector<NodeID> source_vertices_;
  std::vector<NodeID> target_vertices_;
  Weight total_vertex_weight_ = 0;
  Weight source_weight_ = 0;
  Weight target_weight_ = 0;
  Flow max_capacity_ = 0;
  int audit_level_ = 0;
  bool in_audit_ = false;
};

}  // namespace hyperflow
