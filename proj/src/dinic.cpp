#include "hyperflow/dinic.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace hyperflow {

namespace {
constexpr int32_t kUnvisited = -1;
constexpr int32_t kDead = -2;

inline Flow positive(Flow x) { return x > 0 ? x : 0; }
}  // namespace

DinicSolver::DinicSolver(FlowHypergraph& fh) : fh_(&fh) {
  dist_v_.assign(fh.num_vertices(), kUnvisited);
  dist_e_all_.assign(fh.num_hyperedges(), kUnvisited);
  dist_e_restricted_.assign(fh.num_hyperedges(), kUnvisited);
  best_base_.assign(fh.num_hyperedges(), -1);
  incidence_cursor_.assign(fh.num_vertices(), 0);
  sr_.assign(fh.num_vertices(), 0);
  tr_.assign(fh.num_vertices(), 0);
  edge_on_path_.assign(fh.num_hyperedges(), 0);
  queue_.reserve(fh.num_vertices());
}

bool DinicSolver::bfs(Direction dir, const std::vector<NodeID>& seeds, Flow scale) {
  FlowHypergraph& fh = *fh_;
  std::fill(dist_v_.begin(), dist_v_.end(), kUnvisited);
  std::fill(dist_e_all_.begin(), dist_e_all_.end(), kUnvisited);
  std::fill(dist_e_restricted_.begin(), dist_e_restricted_.end(), kUnvisited);
  std::fill(best_base_.begin(), best_base_.end(), Flow{-1});
  queue_.clear();
  for (NodeID s : seeds) {
    if (dist_v_[s] == kUnvisited) {
      dist_v_[s] = 0;
      queue_.push_back(s);
    }
  }
  bool found = false;
  for (size_t head = 0; head < queue_.size(); ++head) {
    const NodeID u = queue_[head];
    if (opposite_terminal(dir, u)) continue;  // search stops at the far side
    const int32_t d = dist_v_[u];
    for (const auto& inc : fh.incidences(u)) {
      const HyperedgeID e = inc.e;
      const Flow entering = fh.pin_flow(inc.pin_index);
      const Flow base = fh.capacity(e) - fh.flow(e) +
                        (dir == Direction::Forward ? positive(-entering) : positive(entering));
      const auto label = [&](uint32_t i) {
        const NodeID v = fh.pin(i).v;
        if (dist_v_[v] == kUnvisited) {
          dist_v_[v] = d + 1;
          queue_.push_back(v);
          found |= opposite_terminal(dir, v);
        }
      };
      // `base` grows with the rerouting headroom of the entering pin, so a
      // later entry with a larger base can reach pins an earlier one could
      // not. Rescan whenever the base improves.
      if (dist_e_all_[e] != kUnvisited || base <= best_base_[e]) continue;
      best_base_[e] = base;
      if (base >= scale) {
        dist_e_all_[e] = d;
        for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) label(i);
      } else {
        if (dist_e_restricted_[e] == kUnvisited) dist_e_restricted_[e] = d;
        const uint32_t begin = dir == Direction::Forward ? fh.sending_begin(e) : fh.pins_begin(e);
        const uint32_t end = dir == Direction::Forward ? fh.pins_end(e) : fh.receiving_end(e);
        for (uint32_t i = begin; i < end; ++i) {
          const Flow extra = dir == Direction::Forward ? positive(fh.pin_flow(i)) : positive(-fh.pin_flow(i));
          if (base + extra >= scale) label(i);
        }
      }
    }
  }
  return found;
}

Flow DinicSolver::blocking_flow(Direction dir, const std::vector<NodeID>& seeds, Flow scale) {
  FlowHypergraph& fh = *fh_;
  std::fill(incidence_cursor_.begin(), incidence_cursor_.end(), 0);

  struct Step {
    NodeID from;
    HyperedgeID e;
    uint32_t enter_pin;  // pin slot of `from`
    uint32_t other_pin;  // pin slot of the reached vertex
  };
  std::vector<Step> path;
  Flow total = 0;

  const auto residual = [&](uint32_t enter, uint32_t other) {
    return dir == Direction::Forward ? fh.residual_capacity(enter, other)
                                     : fh.residual_capacity(other, enter);
  };

  for (NodeID s : seeds) {
    if (dist_v_[s] != 0) continue;
    NodeID current = s;
    path.clear();
    for (;;) {
      if (!path.empty() && opposite_terminal(dir, current)) {
        Flow delta = kMaxFlow;
        for (const Step& st : path) delta = std::min(delta, residual(st.enter_pin, st.other_pin));
        assert(delta >= scale);
        for (const Step& st : path) {
          if (dir == Direction::Forward) {
            fh.push(st.enter_pin, st.other_pin, delta);
          } else {
            fh.push(st.other_pin, st.enter_pin, delta);
          }
          edge_on_path_[st.e] = 0;
        }
        total += delta;
        path.clear();
        current = s;
        continue;
      }

      bool extended = false;
      const int32_t d = dist_v_[current];
      auto incs = fh.incidences(current);
      while (incidence_cursor_[current] < incs.size()) {
        const auto& inc = incs[incidence_cursor_[current]];
        const HyperedgeID e = inc.e;
        if (!edge_on_path_[e] && (dist_e_all_[e] == d || dist_e_restricted_[e] == d)) {
          uint32_t begin, end;
          if (dist_e_all_[e] == d) {
            begin = fh.pins_begin(e);
            end = fh.pins_end(e);
          } else if (dir == Direction::Forward) {
            begin = fh.sending_begin(e);
            end = fh.pins_end(e);
          } else {
            begin = fh.pins_begin(e);
            end = fh.receiving_end(e);
          }
          // The enter pin slot is looked up fresh: pushes may have moved it.
          const uint32_t enter = inc.pin_index;
          for (uint32_t i = begin; i < end; ++i) {
            if (i == enter) continue;
            const NodeID v = fh.pin(i).v;
            if (dist_v_[v] != d + 1) continue;
            if (residual(enter, i) < scale) continue;
            path.push_back({current, e, enter, i});
            edge_on_path_[e] = 1;
            current = v;
            extended = true;
            break;
          }
        }
        if (extended) break;
        ++incidence_cursor_[current];
      }

      if (!extended) {
        if (path.empty()) break;  // seed exhausted
        dist_v_[current] = kDead;
        edge_on_path_[path.back().e] = 0;
        current = path.back().from;
        path.pop_back();
      }
    }
  }
  return total;
}

Flow DinicSolver::exhaust(Direction dir, const std::vector<NodeID>& seeds) {
  if (seeds.empty() || fh_->num_hyperedges() == 0) return 0;
  Flow total = 0;
  Flow scale = std::bit_floor(static_cast<uint64_t>(std::max<Flow>(fh_->max_capacity(), 1)));
  for (; scale >= 1; scale >>= 1) {
    while (bfs(dir, seeds, scale)) {
      Flow added = blocking_flow(dir, seeds, scale);
      if (added == 0) {
        if (scale > 1) break;  // residual paths below this scale remain
        added = augment_one_lawler_unit();
      }
      assert(added > 0);
      total += added;
      if (fh_->audit_level() >= 1) fh_->verify_invariants();
    }
  }
  return total;
}

Flow DinicSolver::augment_one_lawler_unit() {
  FlowHypergraph& fh = *fh_;
  const NodeID n = fh.num_vertices();
  const size_t num_nodes = n + 2 * static_cast<size_t>(fh.num_hyperedges());
  const auto in_node = [&](HyperedgeID e) { return n + 2 * static_cast<size_t>(e); };
  const auto out_node = [&](HyperedgeID e) { return in_node(e) + 1; };

  std::vector<size_t> parent(num_nodes, num_nodes);
  std::vector<size_t> bfs_queue;
  for (NodeID s : fh.source_vertices()) {
    parent[s] = s;
    bfs_queue.push_back(s);
  }
  size_t reached_target = num_nodes;
  for (size_t head = 0; head < bfs_queue.size() && reached_target == num_nodes; ++head) {
    const size_t x = bfs_queue[head];
    const auto visit = [&](size_t y) {
      if (parent[y] != num_nodes) return;
      parent[y] = x;
      bfs_queue.push_back(y);
      if (y < n && fh.is_target(static_cast<NodeID>(y)) && reached_target == num_nodes) reached_target = y;
    };
    if (x < n) {
      if (fh.is_target(static_cast<NodeID>(x))) continue;
      for (const auto& inc : fh.incidences(static_cast<NodeID>(x))) {
        visit(in_node(inc.e));                                // external edge (u, e_i)
        if (fh.pin_flow(inc.pin_index) < 0) visit(out_node(inc.e));  // reverse of (e_o, u)
      }
    } else {
      const HyperedgeID e = static_cast<HyperedgeID>((x - n) / 2);
      const bool is_in = ((x - n) & 1) == 0;
      if (is_in) {
        if (fh.flow(e) < fh.capacity(e)) visit(out_node(e));  // bridge
        for (uint32_t i = fh.sending_begin(e); i < fh.pins_end(e); ++i) {
          visit(fh.pin(i).v);  // reverse of (u, e_i), pin sent flow in
        }
      } else {
        if (fh.flow(e) > 0) visit(in_node(e));  // reverse of bridge
        for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) {
          visit(fh.pin(i).v);  // external edge (e_o, u)
        }
      }
    }
  }
  if (reached_target == num_nodes) return 0;

  // Every maximal gadget segment of the walk runs pin to pin within one
  // hyperedge, and its existence implies pairwise residual capacity of at
  // least one unit. Applying it as a pairwise push keeps the net pin-flow
  // and f(e) bookkeeping consistent; the raw gadget arcs do not, because a
  // pin's two arcs are stored as a single signed value. Pin slots move when
  // subranges are repaired, so each slot is looked up right before its push.
  std::vector<size_t> walk;
  for (size_t y = reached_target;; y = parent[y]) {
    walk.push_back(y);
    if (parent[y] == y) break;
  }
  std::reverse(walk.begin(), walk.end());
  for (size_t i = 0; i + 1 < walk.size();) {
    size_t j = i + 1;
    while (walk[j] >= n) ++j;
    const NodeID u = static_cast<NodeID>(walk[i]);
    const NodeID v = static_cast<NodeID>(walk[j]);
    const HyperedgeID e = static_cast<HyperedgeID>((walk[i + 1] - n) / 2);
    fh.push(fh.find_pin(e, u), fh.find_pin(e, v), 1);
    i = j;
  }
  return 1;
}

Flow DinicSolver::exhaust_flow() {
  return exhaust(Direction::Forward, fh_->source_vertices());
}

Flow DinicSolver::restart_from_piercing(NodeID p) {
  assert(fh_->is_terminal(p));
  const Direction dir = fh_->is_source(p) ? Direction::Forward : Direction::Backward;
  return exhaust(dir, {p});
}

void DinicSolver::reachability(Direction dir, std::vector<uint8_t>& flags, Weight& weight) {
  FlowHypergraph& fh = *fh_;
  const auto& seeds = dir == Direction::Forward ? fh.source_vertices() : fh.target_vertices();
  bfs(dir, seeds, 1);
  std::fill(flags.begin(), flags.end(), 0);
  weight = 0;
  for (NodeID v = 0; v < fh.num_vertices(); ++v) {
    if (dist_v_[v] != kUnvisited && !opposite_terminal(dir, v)) {
      flags[v] = 1;
      weight += fh.vertex_weight(v);
    }
  }
}

void DinicSolver::compute_source_reachable() {
  reachability(Direction::Forward, sr_, sr_weight_);
  collect_cuts();
}

void DinicSolver::compute_target_reachable() {
  reachability(Direction::Backward, tr_, tr_weight_);
  collect_cuts();
}

void DinicSolver::collect_cuts() {
  const FlowHypergraph& fh = *fh_;
  source_cut_.clear();
  target_cut_.clear();
  for (HyperedgeID e = 0; e < fh.num_hyperedges(); ++e) {
    bool in_sr = false, out_sr = false, in_tr = false, out_tr = false;
    for (uint32_t i = fh.pins_begin(e); i < fh.pins_end(e); ++i) {
      const NodeID v = fh.pin(i).v;
      (sr_[v] ? in_sr : out_sr) = true;
      (tr_[v] ? in_tr : out_tr) = true;
    }
    if (in_sr && out_sr) source_cut_.push_back(e);
    if (in_tr && out_tr) target_cut_.push_back(e);
  }
}

Flow DinicSolver::cut_weight(const std::vector<HyperedgeID>& cut) const {
  Flow total = 0;
  for (HyperedgeID e : cut) total += fh_->capacity(e);
  return total;
}

bool DinicSolver::has_augmenting_path() {
  return bfs(Direction::Forward, fh_->source_vertices(), 1);
}

}  // namespace hyperflow
