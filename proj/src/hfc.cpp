#include "hyperflow/hfc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace hyperflow {

HyperFlowCutter::HyperFlowCutter(FlowHypergraph& fh, const HfcConfig& config,
                                 std::vector<int32_t> distance, std::vector<uint8_t> origin)
    : fh_(&fh),
      cfg_(config),
      initial_terminals_(fh.save_terminal_state()),
      initial_weight_{fh.source_weight(), fh.target_weight()},
      solver_(fh),
      rng_(config.seed),
      distance_(std::move(distance)),
      origin_(std::move(origin)),
      dp_(config.dp_table_cap),
      dp_active_(config.use_isolated_dp) {
  const NodeID n = fh_->num_vertices();
  in_queue_[0].assign(n, 0);
  in_queue_[1].assign(n, 0);
  isolated_.assign(n, 0);
  if (dp_active_) {
    edge_side_flag_[0].assign(fh_->num_hyperedges(), 0);
    edge_side_flag_[1].assign(fh_->num_hyperedges(), 0);
    both_sided_count_.assign(n, 0);
  }
}

int HyperFlowCutter::rating(NodeID v, int side) const {
  if (!cfg_.use_distance || distance_.empty()) return 0;
  return origin_[v] == side ? distance_[v] : -1;
}

void HyperFlowCutter::make_isolated(NodeID v) {
  isolated_[v] = 1;
  isolated_list_.push_back(v);
  iso_total_ += fh_->vertex_weight(v);
  ++stats_.isolated_vertices;
  if (!dp_.add_vertex(v, fh_->vertex_weight(v))) disable_dp();
}

void HyperFlowCutter::disable_dp() {
  dp_active_ = false;
  for (const NodeID v : isolated_list_) isolated_[v] = 0;
  isolated_list_.clear();
  iso_total_ = 0;
}

void HyperFlowCutter::init_isolated_tracking() {
  if (!dp_active_) return;
  for (HyperedgeID e = 0; e < fh_->num_hyperedges(); ++e) {
    for (uint32_t i = fh_->pins_begin(e); i < fh_->pins_end(e); ++i) {
      const TerminalSide t = fh_->terminal_side(fh_->pin(i).v);
      if (t == TerminalSide::Source) edge_side_flag_[0][e] = 1;
      if (t == TerminalSide::Target) edge_side_flag_[1][e] = 1;
    }
    if (edge_side_flag_[0][e] && edge_side_flag_[1][e]) {
      for (uint32_t i = fh_->pins_begin(e); i < fh_->pins_end(e); ++i) {
        const NodeID u = fh_->pin(i).v;
        if (!fh_->is_terminal(u)) ++both_sided_count_[u];
      }
    }
  }
  for (NodeID v = 0; v < fh_->num_vertices(); ++v) {
    if (!fh_->is_terminal(v) && fh_->degree(v) > 0 && both_sided_count_[v] == fh_->degree(v)) {
      make_isolated(v);
      if (!dp_active_) return;
    }
  }
}

void HyperFlowCutter::on_terminal_added(NodeID v, TerminalSide side) {
  if (!dp_active_ || dp_frozen_) return;
  const int s = side == TerminalSide::Source ? 0 : 1;
  for (const auto& inc : fh_->incidences(v)) {
    const HyperedgeID e = inc.e;
    if (edge_side_flag_[s][e]) continue;
    edge_side_flag_[s][e] = 1;
    if (!edge_side_flag_[1 - s][e]) continue;
    // e just gained pins on both terminal sides.
    for (uint32_t i = fh_->pins_begin(e); i < fh_->pins_end(e); ++i) {
      const NodeID u = fh_->pin(i).v;
      if (fh_->is_terminal(u) || isolated_[u]) continue;
      if (++both_sided_count_[u] == fh_->degree(u)) {
        make_isolated(u);
        if (!dp_active_) return;
      }
    }
  }
}

void HyperFlowCutter::grow_side(int side) {
  const TerminalSide t = side == 0 ? TerminalSide::Source : TerminalSide::Target;
  for (NodeID v = 0; v < fh_->num_vertices(); ++v) {
    if (reachable(side, v) && !fh_->is_terminal(v) && !isolated_[v]) {
      fh_->add_terminal(v, t);
      on_terminal_added(v, t);
    }
  }
}

void HyperFlowCutter::refresh_candidates(int side) {
  const auto& cut = side == 0 ? solver_.source_cut() : solver_.target_cut();
  for (const HyperedgeID e : cut) {
    for (uint32_t i = fh_->pins_begin(e); i < fh_->pins_end(e); ++i) {
      const NodeID v = fh_->pin(i).v;
      if (fh_->is_terminal(v) || isolated_[v] || in_queue_[side][v]) continue;
      in_queue_[side][v] = 1;
      const size_t bucket = static_cast<size_t>(rating(v, side) + 1);
      if (buckets_[side].size() <= bucket) buckets_[side].resize(bucket + 1);
      buckets_[side][bucket].push_back(v);
    }
  }
}

NodeID HyperFlowCutter::pop_piercing(int side, bool require_avoid) {
  auto& buckets = buckets_[side];
  int fallback_bucket = -1;
  std::vector<uint32_t> avoiders;
  for (int b = static_cast<int>(buckets.size()) - 1; b >= 0; --b) {
    auto& bucket = buckets[b];
    // Lazy removal of entries that became terminals or isolated.
    size_t out = 0;
    for (size_t i = 0; i < bucket.size(); ++i) {
      const NodeID v = bucket[i];
      if (fh_->is_terminal(v) || isolated_[v]) {
        in_queue_[side][v] = 0;
        continue;
      }
      bucket[out++] = v;
    }
    bucket.resize(out);
    if (bucket.empty()) continue;

    avoiders.clear();
    for (uint32_t i = 0; i < bucket.size(); ++i) {
      if (!reachable(1 - side, bucket[i])) avoiders.push_back(i);
    }
    if (!avoiders.empty()) {
      const uint32_t pos = avoiders[rng_.below(avoiders.size())];
      const NodeID v = bucket[pos];
      bucket[pos] = bucket.back();
      bucket.pop_back();
      in_queue_[side][v] = 0;
      return v;
    }
    if (fallback_bucket < 0) fallback_bucket = b;
  }
  if (require_avoid || fallback_bucket < 0) return kInvalidNode;
  auto& bucket = buckets[fallback_bucket];
  const size_t pos = rng_.below(bucket.size());
  const NodeID v = bucket[pos];
  bucket[pos] = bucket.back();
  bucket.pop_back();
  in_queue_[side][v] = 0;
  return v;
}

HyperFlowCutter::BalanceOption HyperFlowCutter::evaluate(int orientation) const {
  BalanceOption opt;
  opt.orientation = orientation;
  const Weight total = fh_->total_vertex_weight();
  const Weight m0 = cfg_.max_block_weight[0];
  const Weight m1 = cfg_.max_block_weight[1];
  Weight w0, w1;
  if (orientation == 0) {
    w0 = solver_.source_reachable_weight();
    w1 = total - w0;
  } else {
    w1 = solver_.target_reachable_weight();
    w0 = total - w1;
  }

  Weight x = 0;
  if (dp_active_ && !isolated_list_.empty()) {
    Weight iso_in_block0 = 0;
    for (const NodeID v : isolated_list_) {
      const bool in0 = orientation == 0 ? reachable(0, v) : !reachable(1, v);
      if (in0) iso_in_block0 += fh_->vertex_weight(v);
    }
    w0 -= iso_in_block0;
    w1 -= iso_total_ - iso_in_block0;
    const Weight lo = std::max<Weight>(0, iso_total_ - (m1 - w1));
    const Weight hi = std::min(iso_total_, m0 - w0);
    if (lo > hi) return opt;
    // Split minimizing max(w0/m0, w1/m1): equalize the filled fractions.
    const long double ideal =
        (static_cast<long double>(m0) * (w1 + iso_total_) - static_cast<long double>(m1) * w0) /
        (static_cast<long double>(m0) + static_cast<long double>(m1));
    const Weight preferred = std::clamp<Weight>(static_cast<Weight>(std::llroundl(ideal)), lo, hi);
    x = dp_.closest_achievable_in(lo, hi, preferred);
    if (x < 0) return opt;
    w0 += x;
    w1 += iso_total_ - x;
  } else {
    if (w0 > m0 || w1 > m1) return opt;
  }

  opt.feasible = true;
  opt.iso_to_side0 = x;
  opt.block_weight[0] = w0;
  opt.block_weight[1] = w1;
  opt.key = std::max(static_cast<long double>(w0) / std::max<Weight>(m0, 1),
                     static_cast<long double>(w1) / std::max<Weight>(m1, 1));
  return opt;
}

void HyperFlowCutter::build_result(const BalanceOption& opt, HfcResult& out) const {
  const NodeID n = fh_->num_vertices();
  out.feasible = true;
  out.cut_weight = flow_;
  out.block_weight[0] = opt.block_weight[0];
  out.block_weight[1] = opt.block_weight[1];
  out.side.assign(n, 1);
  for (NodeID v = 0; v < n; ++v) {
    if (isolated_[v]) continue;
    const bool in0 = opt.orientation == 0 ? reachable(0, v) : !reachable(1, v);
    out.side[v] = in0 ? 0 : 1;
  }
  if (dp_active_ && !isolated_list_.empty()) {
    for (const NodeID v : dp_.reconstruct(opt.iso_to_side0)) out.side[v] = 0;
  }
}

// The piercing loop can overshoot: growing a side to its reachable set pulls
// in the residual closure of the pierced vertex, so the side weights may jump
// past the balance point and strand the run even though a feasible
// bipartition exists. This fallback discards the grown terminals and builds
// one directly: block 0 collects vertices in BFS order from the original
// sources until the remainder fits block 1. With every vertex a terminal the
// maximum flow saturates exactly the hyperedges spanning both blocks, so the
// flow value equals the cut of the returned bipartition, and it cannot be
// smaller than any earlier flow value because every source-target separator
// bounds those from above.
HfcResult HyperFlowCutter::balanced_fallback() {
  ++stats_.balanced_fallbacks;
  HfcResult res;
  res.cut_weight = flow_;
  res.stats = stats_;

  const Weight total = fh_->total_vertex_weight();
  const Weight m0 = cfg_.max_block_weight[0];
  const Weight m1 = cfg_.max_block_weight[1];
  const Weight w0 = initial_weight_[0];
  const Weight w1 = initial_weight_[1];
  if (w0 > m0 || w1 > m1 || total > m0 + m1) return res;
  const Weight unassigned = total - w0 - w1;
  // Block 0 must absorb at least lo of the free weight so that the remainder
  // fits block 1, and can hold at most hi more.
  const Weight lo = std::max<Weight>(0, unassigned - (m1 - w1));
  const Weight hi = m0 - w0;

  fh_->restore_terminal_state(initial_terminals_);
  fh_->reset_flow();

  // Visit the free vertices by BFS from the sources, keeping block 0
  // connected where possible; unreached vertices follow in index order.
  const NodeID n = fh_->num_vertices();
  std::vector<uint8_t> seen(n, 0);
  std::vector<NodeID> order;
  order.reserve(n);
  for (const NodeID v : fh_->source_vertices()) {
    seen[v] = 1;
    order.push_back(v);
  }
  for (size_t head = 0; head < order.size(); ++head) {
    for (const auto& inc : fh_->incidences(order[head])) {
      for (uint32_t i = fh_->pins_begin(inc.e); i < fh_->pins_end(inc.e); ++i) {
        const NodeID u = fh_->pin(i).v;
        if (!seen[u] && !fh_->is_target(u)) {
          seen[u] = 1;
          order.push_back(u);
        }
      }
    }
  }
  for (NodeID v = 0; v < n; ++v) {
    if (!seen[v] && !fh_->is_target(v)) order.push_back(v);
  }

  // Aim for the same split as evaluate(): equalize the filled fractions.
  const long double ideal =
      (static_cast<long double>(m0) * (w1 + unassigned) - static_cast<long double>(m1) * w0) /
      (static_cast<long double>(m0) + static_cast<long double>(m1));
  const Weight preferred = std::clamp<Weight>(static_cast<Weight>(std::llroundl(ideal)), lo, hi);

  std::vector<uint8_t> side(n, 1);
  Weight taken = 0;
  for (const NodeID v : order) {
    if (fh_->is_source(v)) {
      side[v] = 0;
      continue;
    }
    const Weight w = fh_->vertex_weight(v);
    if (taken >= preferred || taken + w > hi) continue;
    side[v] = 0;
    taken += w;
  }
  // Greedy filling can fall short of lo when the vertex weights are coarse;
  // unit weights always land exactly on the preferred split.
  if (taken < lo) return res;

  for (NodeID v = 0; v < n; ++v) {
    if (!fh_->is_terminal(v)) {
      fh_->add_terminal(v, side[v] == 0 ? TerminalSide::Source : TerminalSide::Target);
    }
  }
  flow_ = solver_.exhaust_flow();
  ++stats_.flow_computations;

  res.feasible = true;
  res.cut_weight = flow_;
  res.block_weight[0] = w0 + taken;
  res.block_weight[1] = total - w0 - taken;
  res.side = std::move(side);
  res.stats = stats_;
  return res;
}

HfcResult HyperFlowCutter::run() {
  flow_ = solver_.exhaust_flow();
  ++stats_.flow_computations;
  init_isolated_tracking();

  HfcResult infeasible;
  while (true) {
    if (flow_ > cfg_.cut_bound) break;
    solver_.compute_source_reachable();
    solver_.compute_target_reachable();

    const BalanceOption opt0 = evaluate(0);
    const BalanceOption opt1 = evaluate(1);
    const BalanceOption* best = nullptr;
    if (opt0.feasible) best = &opt0;
    if (opt1.feasible && (!best || opt1.key < best->key)) best = &opt1;
    if (best) {
      HfcResult res;
      build_result(*best, res);
      dp_frozen_ = true;
      if (cfg_.use_mbc) mbc_sweep(res, *best);
      res.stats = stats_;
      return res;
    }

    // Both blocks only ever grow, so overweight terminals end the search.
    if (fh_->source_weight() > cfg_.max_block_weight[0] ||
        fh_->target_weight() > cfg_.max_block_weight[1]) {
      return balanced_fallback();
    }

    int side = solver_.source_reachable_weight() <= solver_.target_reachable_weight() ? 0 : 1;
    NodeID p = kInvalidNode;
    for (int attempt = 0; attempt < 2 && p == kInvalidNode; ++attempt, side = 1 - side) {
      grow_side(side);
      refresh_candidates(side);
      p = pop_piercing(side, false);
    }
    if (p == kInvalidNode) return balanced_fallback();
    side = 1 - side;  // undo the last flip of the attempt loop

    const TerminalSide t = side == 0 ? TerminalSide::Source : TerminalSide::Target;
    fh_->add_terminal(p, t);
    on_terminal_added(p, t);
    ++stats_.pierce_steps;
    if (stats_.pierce_steps > fh_->num_vertices()) {
      throw std::logic_error("piercing exceeded the vertex count");
    }
    flow_ += solver_.restart_from_piercing(p);
    ++stats_.flow_computations;
  }

  infeasible.cut_weight = flow_;
  infeasible.stats = stats_;
  return infeasible;
}

void HyperFlowCutter::mbc_sweep(HfcResult& best, BalanceOption best_opt) {
  long double best_key = best_opt.key;
  const auto terminal_snapshot = fh_->save_terminal_state();
  const auto reach_snapshot = solver_.save_reachability();
  const std::vector<std::vector<NodeID>> bucket_snapshot[2] = {buckets_[0], buckets_[1]};
  const std::vector<uint8_t> in_queue_snapshot[2] = {in_queue_[0], in_queue_[1]};

  for (int rep = 0; rep < cfg_.mbc_repetitions; ++rep) {
    fh_->restore_terminal_state(terminal_snapshot);
    solver_.restore_reachability(reach_snapshot);
    buckets_[0] = bucket_snapshot[0];
    buckets_[1] = bucket_snapshot[1];
    in_queue_[0] = in_queue_snapshot[0];
    in_queue_[1] = in_queue_snapshot[1];

    int side = rep % 2;
    for (NodeID step = 0; step <= fh_->num_vertices(); ++step) {
      NodeID p = kInvalidNode;
      int pierced = side;
      for (int attempt = 0; attempt < 2 && p == kInvalidNode; ++attempt) {
        pierced = attempt == 0 ? side : 1 - side;
        grow_side(pierced);
        refresh_candidates(pierced);
        p = pop_piercing(pierced, true);
      }
      if (p == kInvalidNode) break;

      const TerminalSide t = pierced == 0 ? TerminalSide::Source : TerminalSide::Target;
      fh_->add_terminal(p, t);
      // Piercing outside the opposite reachable set keeps the flow maximum,
      // so only the pierced side's reachable set needs recomputing.
      if (pierced == 0) {
        solver_.compute_source_reachable();
      } else {
        solver_.compute_target_reachable();
      }

      for (int orientation = 0; orientation < 2; ++orientation) {
        const BalanceOption opt = evaluate(orientation);
        if (opt.feasible && opt.key < best_key) {
          best_key = opt.key;
          build_result(opt, best);
          ++stats_.mbc_improvements;
        }
      }
      side = 1 - pierced;
    }
  }

  fh_->restore_terminal_state(terminal_snapshot);
  solver_.restore_reachability(reach_snapshot);
  buckets_[0] = bucket_snapshot[0];
  buckets_[1] = bucket_snapshot[1];
  in_queue_[0] = in_queue_snapshot[0];
  in_queue_[1] = in_queue_snapshot[1];
}

}  // namespace hyperflow
