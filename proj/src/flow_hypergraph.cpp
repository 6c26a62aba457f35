#include "hyperflow/flow_hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hyperflow {

FlowHypergraph::FlowHypergraph(std::vector<Weight> vertex_weights, std::vector<Flow> capacities,
                               const std::vector<std::vector<NodeID>>& edge_pins)
    : vertex_weight_(std::move(vertex_weights)), capacity_(std::move(capacities)) {
  const NodeID n = num_vertices();
  const HyperedgeID m = num_hyperedges();
  if (edge_pins.size() != m) throw std::invalid_argument("capacity/pin list size mismatch");
  total_vertex_weight_ = std::accumulate(vertex_weight_.begin(), vertex_weight_.end(), Weight{0});
  max_capacity_ = m == 0 ? 0 : *std::max_element(capacity_.begin(), capacity_.end());

  edge_offsets_.assign(m + 1, 0);
  for (HyperedgeID e = 0; e < m; ++e) {
    edge_offsets_[e + 1] = edge_offsets_[e] + static_cast<uint32_t>(edge_pins[e].size());
  }
  const uint32_t p = edge_offsets_.back();
  pins_.resize(p);
  pin_flow_.assign(p, 0);
  pin_to_edge_.resize(p);
  flow_.assign(m, 0);
  receiving_end_.resize(m);
  sending_begin_.resize(m);
  for (HyperedgeID e = 0; e < m; ++e) {
    receiving_end_[e] = edge_offsets_[e];
    sending_begin_[e] = edge_offsets_[e + 1];
  }

  std::vector<uint32_t> deg(n, 0);
  for (const auto& list : edge_pins) {
    for (NodeID v : list) {
      if (v >= n) throw std::invalid_argument("flow pin vertex out of range");
      ++deg[v];
    }
  }
  vertex_offsets_.assign(n + 1, 0);
  for (NodeID v = 0; v < n; ++v) vertex_offsets_[v + 1] = vertex_offsets_[v] + deg[v];
  incidences_.resize(p);
  std::vector<uint32_t> cursor(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
  uint32_t pin_idx = 0;
  for (HyperedgeID e = 0; e < m; ++e) {
    for (NodeID v : edge_pins[e]) {
      const uint32_t inc = cursor[v]++;
      incidences_[inc] = {e, pin_idx};
      pins_[pin_idx] = {v, inc};
      pin_to_edge_[pin_idx] = e;
      ++pin_idx;
    }
  }
  terminal_.assign(n, TerminalSide::None);
}

uint32_t FlowHypergraph::find_pin(HyperedgeID e, NodeID v) const {
  for (uint32_t i = pins_begin(e); i < pins_end(e); ++i) {
    if (pins_[i].v == v) return i;
  }
  assert(false && "vertex is not a pin of this hyperedge");
  return kInvalidNode;
}

void FlowHypergraph::swap_pins(uint32_t a, uint32_t b) {
  if (a == b) return;
  std::swap(pins_[a], pins_[b]);
  std::swap(pin_flow_[a], pin_flow_[b]);
  incidences_[pins_[a].incidence_index].pin_index = a;
  incidences_[pins_[b].incidence_index].pin_index = b;
}

void FlowHypergraph::restore_subrange(HyperedgeID e, uint32_t idx) {
  const int target = pin_flow_[idx] < 0 ? -1 : (pin_flow_[idx] > 0 ? 1 : 0);
  for (;;) {
    const int region = idx < receiving_end_[e] ? -1 : (idx < sending_begin_[e] ? 0 : 1);
    if (region == target) return;
    if (region == -1) {  // receiving -> neutral
      swap_pins(idx, receiving_end_[e] - 1);
      idx = --receiving_end_[e];
    } else if (region == 0 && target == 1) {  // neutral -> sending
      swap_pins(idx, sending_begin_[e] - 1);
      idx = --sending_begin_[e];
    } else if (region == 0 && target == -1) {  // neutral -> receiving
      swap_pins(idx, receiving_end_[e]);
      idx = receiving_end_[e]++;
    } else {  // sending -> neutral
      swap_pins(idx, sending_begin_[e]);
      idx = sending_begin_[e]++;
    }
  }
}

void FlowHypergraph::push_impl(uint32_t u_idx, uint32_t v_idx, Flow delta) {
  const HyperedgeID e = pin_to_edge_[u_idx];
  assert(pin_to_edge_[v_idx] == e && u_idx != v_idx);
  assert(delta > 0 && delta <= residual_capacity(u_idx, v_idx));

  // Track the two pins through subrange swaps via their incidence slots.
  const uint32_t inc_u = pins_[u_idx].incidence_index;
  const uint32_t inc_v = pins_[v_idx].incidence_index;
  const auto u = [&] { return incidences_[inc_u].pin_index; };
  const auto v = [&] { return incidences_[inc_v].pin_index; };

  const auto step = [&](Flow d, int bridge) {
    if (d == 0) return;
    flow_[e] += bridge * d;
    pin_flow_[u()] += d;
    pin_flow_[v()] -= d;
    restore_subrange(e, u());
    restore_subrange(e, v());
    delta -= d;
  };

  // p1 = (u, e_o, e_i, v): reroute u's received flow into v's sent flow.
  step(std::min({delta, positive(-pin_flow_[u()]), positive(pin_flow_[v()])}), -1);
  // p2 = (u, e_o, v): u's received flow replaces flow previously sent to v.
  step(std::min(delta, positive(-pin_flow_[u()])), 0);
  // p3 = (u, e_i, v): u takes over supplying v's previously sent flow.
  step(std::min(delta, positive(pin_flow_[v()])), 0);
  // p4 = (u, e_i, e_o, v): fresh flow across the bridge.
  step(delta, +1);
  assert(delta == 0);
}

void FlowHypergraph::push(uint32_t u_idx, uint32_t v_idx, Flow delta) {
  if (audit_level_ >= 2 && !in_audit_) {
    in_audit_ = true;
    const HyperedgeID e = pin_to_edge_[u_idx];
    const uint32_t inc_u = pins_[u_idx].incidence_index;
    const uint32_t inc_v = pins_[v_idx].incidence_index;
    const Flow pre_fe = flow_[e];
    const Flow pre_fu = pin_flow_[u_idx];
    const Flow pre_fv = pin_flow_[v_idx];

    push_impl(u_idx, v_idx, delta);
    // Reverse must restore the values exactly, then redo.
    push_impl(incidences_[inc_v].pin_index, incidences_[inc_u].pin_index, delta);
    if (flow_[e] != pre_fe || pin_flow_[incidences_[inc_u].pin_index] != pre_fu ||
        pin_flow_[incidences_[inc_v].pin_index] != pre_fv) {
      throw std::logic_error("push reversal did not restore flow state");
    }
    push_impl(incidences_[inc_u].pin_index, incidences_[inc_v].pin_index, delta);
    in_audit_ = false;
  } else {
    push_impl(u_idx, v_idx, delta);
  }
  if (audit_level_ >= 1 && !in_audit_) verify_invariants(false);
}

void FlowHypergraph::add_terminal(NodeID v, TerminalSide side) {
  assert(side != TerminalSide::None);
  assert(terminal_[v] == TerminalSide::None);
  terminal_[v] = side;
  if (side == TerminalSide::Source) {
    source_weight_ += vertex_weight_[v];
    source_vertices_.push_back(v);
  } else {
    target_weight_ += vertex_weight_[v];
    target_vertices_.push_back(v);
  }
}

void FlowHypergraph::reset_flow() {
  std::fill(flow_.begin(), flow_.end(), 0);
  std::fill(pin_flow_.begin(), pin_flow_.end(), 0);
  for (HyperedgeID e = 0; e < num_hyperedges(); ++e) {
    receiving_end_[e] = edge_offsets_[e];
    sending_begin_[e] = edge_offsets_[e + 1];
  }
}

void FlowHypergraph::verify_invariants(bool check_conservation) const {
  std::vector<Flow> net(num_vertices(), 0);
  for (HyperedgeID e = 0; e < num_hyperedges(); ++e) {
    if (flow_[e] < 0 || flow_[e] > capacity_[e]) {
      throw std::logic_error("hyperedge flow outside [0, capacity]");
    }
    Flow sent = 0, received = 0;
    for (uint32_t i = pins_begin(e); i < pins_end(e); ++i) {
      const Flow f = pin_flow_[i];
      sent += positive(f);
      received += positive(-f);
      const int region = i < receiving_end_[e] ? -1 : (i < sending_begin_[e] ? 0 : 1);
      const int sign = f < 0 ? -1 : (f > 0 ? 1 : 0);
      if (region != sign) throw std::logic_error("pin outside its sign subrange");
      if (incidences_[pins_[i].incidence_index].pin_index != i ||
          incidences_[pins_[i].incidence_index].e != e) {
        throw std::logic_error("stale incidence back pointer");
      }
      net[pins_[i].v] += f;
    }
    if (sent != flow_[e] || received != flow_[e]) {
      throw std::logic_error("f(e) does not match pin flow sums for hyperedge " + std::to_string(e));
    }
  }
  if (!check_conservation) return;
  for (NodeID v = 0; v < num_vertices(); ++v) {
    if (!is_terminal(v) && net[v] != 0) {
      throw std::logic_error("flow conservation violated at vertex " + std::to_string(v));
    }
  }
}

}  // namespace hyperflow
