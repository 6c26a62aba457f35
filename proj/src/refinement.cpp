#include "hyperflow/refinement.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

namespace hyperflow {

Weight apply_refinement(const Hypergraph& hg, Partition& p, NodeID block_i, NodeID block_j,
                        const HfcResult& res, const ExtractionResult& ext) {
  for (NodeID fv = 0; fv < static_cast<NodeID>(ext.flow_to_orig.size()); ++fv) {
    const NodeID orig = ext.flow_to_orig[fv];
    if (orig == kInvalidNode) continue;
    const NodeID target = res.side[fv] == 0 ? block_i : block_j;
    if (p.block(orig) != target) p.set_block(orig, target, hg);
  }
  return ext.retained_cut_weight - res.cut_weight;
}

namespace {

using PairKey = std::pair<NodeID, NodeID>;

std::map<PairKey, Weight> compute_pair_cuts(const Hypergraph& hg, const Partition& p) {
  std::map<PairKey, Weight> cuts;
  std::vector<NodeID> blocks;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    blocks.clear();
    for (const NodeID v : hg.pins(e)) {
      const NodeID b = p.block(v);
      if (std::find(blocks.begin(), blocks.end(), b) == blocks.end()) blocks.push_back(b);
    }
    std::sort(blocks.begin(), blocks.end());
    for (size_t a = 0; a < blocks.size(); ++a) {
      for (size_t b = a + 1; b < blocks.size(); ++b) {
        cuts[{blocks[a], blocks[b]}] += hg.hyperedge_weight(e);
      }
    }
  }
  return cuts;
}

}  // namespace

Partition refine_kway(const Hypergraph& hg, Partition p, const RefineConfig& config,
                      RefineStats* stats) {
  RefineStats local;
  RefineStats& st = stats ? *stats : local;
  const Weight max_block =
      max_admissible_block_weight(hg.total_vertex_weight(), p.k(), config.eps);

  std::map<PairKey, Weight> pair_cuts = compute_pair_cuts(hg, p);
  std::map<PairKey, bool> active;
  std::map<PairKey, int> failures;
  for (const auto& [key, w] : pair_cuts) active[key] = w > 0;

  uint64_t attempt = 0;
  while (true) {
    // Heaviest active pair first; map order breaks ties deterministically.
    const PairKey* chosen = nullptr;
    Weight chosen_weight = 0;
    for (const auto& [key, is_active] : active) {
      if (!is_active) continue;
      const Weight w = pair_cuts[key];
      if (w <= 0) continue;
      if (!chosen || w > chosen_weight) {
        chosen = &key;
        chosen_weight = w;
      }
    }
    if (!chosen) break;
    const PairKey pair = *chosen;
    ++attempt;
    const auto give_up = [&] {
      if (++failures[pair] >= config.pair_attempts) active[pair] = false;
    };

    ExtractionResult ext =
        extract_flow_problem(hg, p, pair.first, pair.second, config.mode, config.eps,
                             combine_seed(config.seed, attempt, 0));
    if (ext.skip) {
      if (ext.pair_cut_weight == 0) {
        active[pair] = false;
      } else {
        give_up();
      }
      continue;
    }

    HfcConfig hfc;
    hfc.max_block_weight[0] = max_block;
    hfc.max_block_weight[1] = max_block;
    hfc.cut_bound = ext.retained_cut_weight;
    hfc.seed = combine_seed(config.seed, attempt, 1);
    hfc.use_isolated_dp = config.use_isolated_dp;
    // The distance rating keeps cuts close to the original one, which is the
    // right bias on a good partition but can pin the search to a bad cut.
    // Only the first attempt per pair uses it; retries explore without it.
    hfc.use_distance = config.use_distance && failures[pair] < 1;
    hfc.use_mbc = config.use_mbc;
    hfc.mbc_repetitions = config.mbc_repetitions;
    hfc.dp_table_cap = config.dp_table_cap;

    HyperFlowCutter cutter(ext.fh, hfc, ext.distance, ext.origin);
    const HfcResult res = cutter.run();
    ++st.flow_problems;
    st.flow_problem_vertices += ext.fh.num_vertices();
    st.pierce_steps += res.stats.pierce_steps;
    st.flow_computations += res.stats.flow_computations;
    st.isolated_vertices += res.stats.isolated_vertices;
    st.mbc_improvements += res.stats.mbc_improvements;
    st.balanced_fallbacks += res.stats.balanced_fallbacks;

    const Weight gain = ext.retained_cut_weight - res.cut_weight;
    const Weight old_max = std::max(p.block_weight(pair.first), p.block_weight(pair.second));
    const Weight new_max = std::max(res.block_weight[0], res.block_weight[1]);
    const bool improves = res.feasible && res.block_weight[0] > 0 && res.block_weight[1] > 0 &&
                          (gain > 0 || (gain == 0 && new_max < old_max));
    if (!improves) {
      give_up();
      continue;
    }

    apply_refinement(hg, p, pair.first, pair.second, res, ext);
    ++st.improvements;
    st.total_gain += gain;

    pair_cuts = compute_pair_cuts(hg, p);
    for (auto& [key, is_active] : active) {
      const bool touches = key.first == pair.first || key.first == pair.second ||
                           key.second == pair.first || key.second == pair.second;
      if (touches && pair_cuts.count(key) && pair_cuts[key] > 0) {
        is_active = true;
        failures[key] = 0;
      }
    }
    for (const auto& [key, w] : pair_cuts) {
      if (w > 0 && !active.count(key)) active[key] = true;
    }
    failures[pair] = 0;
  }
  return p;
}

Partition greedy_initial_partition(const Hypergraph& hg, NodeID k, double eps, uint64_t seed) {
  (void)eps;
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (k > hg.num_vertices()) throw std::invalid_argument("k exceeds the vertex count");

  std::vector<NodeID> assignment(hg.num_vertices(), 0);
  std::vector<uint32_t> subset_of(hg.num_vertices(), 0);
  Rng rng(seed);
  uint32_t next_subset_id = 1;

  // Iterative recursive bisection over (vertex set, block count, first block).
  struct Task {
    std::vector<NodeID> verts;
    NodeID parts;
    NodeID first_block;
  };
  std::vector<Task> tasks;
  {
    std::vector<NodeID> all(hg.num_vertices());
    for (NodeID v = 0; v < hg.num_vertices(); ++v) all[v] = v;
    tasks.push_back({std::move(all), k, 0});
  }
  while (!tasks.empty()) {
    Task task = std::move(tasks.back());
    tasks.pop_back();
    if (task.parts == 1) {
      for (const NodeID v : task.verts) assignment[v] = task.first_block;
      continue;
    }
    const NodeID k0 = task.parts / 2;
    const NodeID k1 = task.parts - k0;
    Weight total = 0;
    for (const NodeID v : task.verts) total += hg.vertex_weight(v);
    const Weight target = total * k0 / task.parts;

    const uint32_t subset_id = next_subset_id++;
    for (const NodeID v : task.verts) subset_of[v] = subset_id;

    // BFS visit order over the subset, restarting at a random unvisited
    // vertex per component.
    std::vector<NodeID> order;
    std::vector<uint8_t> in_order(hg.num_vertices(), 0);
    std::vector<NodeID> pool = task.verts;
    rng.shuffle(pool.begin(), pool.end());
    std::vector<NodeID> queue;
    size_t head = 0;
    auto enqueue = [&](NodeID v) {
      if (subset_of[v] != subset_id || in_order[v]) return;
      in_order[v] = 1;
      queue.push_back(v);
      order.push_back(v);
    };
    size_t pool_pos = 0;
    while (order.size() < task.verts.size()) {
      if (head == queue.size()) {
        while (in_order[pool[pool_pos]]) ++pool_pos;
        enqueue(pool[pool_pos]);
      }
      const NodeID u = queue[head++];
      for (const HyperedgeID e : hg.incident_hyperedges(u)) {
        for (const NodeID w : hg.pins(e)) enqueue(w);
      }
    }

    // Prefix of the visit order becomes the first part: grow toward the
    // weight target, keeping both parts large enough for their block counts.
    const size_t min_a = k0;
    const size_t max_a = task.verts.size() - k1;
    size_t cut = 0;
    Weight wa = 0;
    while (cut < min_a || (cut < max_a &&
                           std::llabs((wa + hg.vertex_weight(order[cut])) - target) <=
                               std::llabs(wa - target))) {
      wa += hg.vertex_weight(order[cut]);
      ++cut;
    }

    Task a{std::vector<NodeID>(order.begin(), order.begin() + cut), k0, task.first_block};
    Task b{std::vector<NodeID>(order.begin() + cut, order.end()), k1,
           static_cast<NodeID>(task.first_block + k0)};
    tasks.push_back(std::move(b));
    tasks.push_back(std::move(a));
  }
  return Partition(k, std::move(assignment), hg);
}

}  // namespace hyperflow
