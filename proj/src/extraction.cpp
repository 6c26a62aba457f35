#include "hyperflow/extraction.hpp"

#include <algorithm>
#include <cmath>

namespace hyperflow {

namespace {

Weight side_bound(ExtractionMode mode, const Hypergraph& hg, const Partition& p, NodeID own,
                  NodeID other, double eps) {
  if (mode == ExtractionMode::Hfc) return p.block_weight(own) / 5;
  const Weight avg = (hg.total_vertex_weight() + p.k() - 1) / p.k();
  const long double bound =
      (1.0L + 16.0L * static_cast<long double>(eps)) * static_cast<long double>(avg) -
      static_cast<long double>(p.block_weight(other));
  if (bound <= 0) return 0;
  return static_cast<Weight>(std::floor(bound + 1e-9L));
}

}  // namespace

ExtractionResult extract_flow_problem(const Hypergraph& hg, const Partition& p, NodeID block_i,
                                      NodeID block_j, ExtractionMode mode, double eps,
                                      uint64_t seed) {
  ExtractionResult res;
  const NodeID n = hg.num_vertices();
  const NodeID blocks[2] = {block_i, block_j};

  std::vector<uint8_t> is_cut(hg.num_hyperedges(), 0);
  std::vector<uint8_t> is_boundary(n, 0);
  std::vector<NodeID> boundary[2];
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    if (hg.hyperedge_size(e) < 2) continue;
    bool has[2] = {false, false};
    for (const NodeID v : hg.pins(e)) {
      for (int s = 0; s < 2; ++s) has[s] = has[s] || p.block(v) == blocks[s];
    }
    if (!has[0] || !has[1]) continue;
    is_cut[e] = 1;
    res.pair_cut_weight += hg.hyperedge_weight(e);
    for (const NodeID v : hg.pins(e)) {
      for (int s = 0; s < 2; ++s) {
        if (p.block(v) == blocks[s] && !is_boundary[v]) {
          is_boundary[v] = 1;
          boundary[s].push_back(v);
        }
      }
    }
  }
  if (res.pair_cut_weight == 0) {
    res.skip = true;
    return res;
  }

  // Weight-constrained BFS per side, seeded at the cut boundary, visit order
  // randomized within layers. Stops once the next vertex would overflow.
  std::vector<uint8_t> visited(n, 0);
  std::vector<int32_t> layer_of(n, 0);
  Weight visited_weight[2] = {0, 0};
  NodeID last_visited[2] = {kInvalidNode, kInvalidNode};
  for (int s = 0; s < 2; ++s) {
    const Weight bound = side_bound(mode, hg, p, blocks[s], blocks[1 - s], eps);
    Rng rng(combine_seed(seed, block_i, block_j, static_cast<uint64_t>(s)));
    bool stopped = false;
    int32_t layer = 0;
    std::vector<NodeID> frontier, next;
    auto try_visit = [&](NodeID v) {
      if (stopped || visited[v]) return;
      if (visited_weight[s] + hg.vertex_weight(v) > bound) {
        stopped = true;
        return;
      }
      visited[v] = 1;
      layer_of[v] = layer;
      visited_weight[s] += hg.vertex_weight(v);
      last_visited[s] = v;
      next.push_back(v);
    };
    std::vector<NodeID> seeds = boundary[s];
    rng.shuffle(seeds.begin(), seeds.end());
    for (const NodeID v : seeds) try_visit(v);
    frontier.swap(next);
    while (!frontier.empty() && !stopped) {
      ++layer;
      rng.shuffle(frontier.begin(), frontier.end());
      for (const NodeID u : frontier) {
        for (const HyperedgeID e : hg.incident_hyperedges(u)) {
          for (const NodeID w : hg.pins(e)) {
            if (p.block(w) == blocks[s]) try_visit(w);
          }
          if (stopped) break;
        }
        if (stopped) break;
      }
      frontier.swap(next);
      next.clear();
    }
  }

  std::vector<NodeID> orig_to_flow(n, kInvalidNode);
  std::vector<Weight> weights;
  for (NodeID v = 0; v < n; ++v) {
    if (visited[v]) {
      orig_to_flow[v] = static_cast<NodeID>(weights.size());
      res.flow_to_orig.push_back(v);
      weights.push_back(hg.vertex_weight(v));
      res.distance.push_back(layer_of[v]);
      res.origin.push_back(p.block(v) == block_i ? 0 : 1);
    }
  }
  res.source_super = static_cast<NodeID>(weights.size());
  res.target_super = res.source_super + 1;
  for (int s = 0; s < 2; ++s) {
    res.flow_to_orig.push_back(kInvalidNode);
    weights.push_back(p.block_weight(blocks[s]) - visited_weight[s]);
    res.distance.push_back(0);
    res.origin.push_back(static_cast<uint8_t>(s));
  }

  std::vector<std::vector<NodeID>> edge_pins;
  std::vector<Flow> capacities;
  std::vector<NodeID> pins;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    if (hg.hyperedge_size(e) < 2) continue;
    pins.clear();
    bool unvisited[2] = {false, false};
    for (const NodeID v : hg.pins(e)) {
      if (visited[v]) {
        pins.push_back(orig_to_flow[v]);
      } else {
        for (int s = 0; s < 2; ++s) unvisited[s] = unvisited[s] || p.block(v) == blocks[s];
      }
    }
    if (unvisited[0] && unvisited[1]) continue;  // permanently cut
    if (unvisited[0]) pins.push_back(res.source_super);
    if (unvisited[1]) pins.push_back(res.target_super);
    if (pins.size() < 2) continue;
    edge_pins.push_back(pins);
    capacities.push_back(hg.hyperedge_weight(e));
    if (is_cut[e]) {
      res.retained_cut.push_back(e);
      res.retained_cut_weight += hg.hyperedge_weight(e);
    }
  }
  if (res.retained_cut.empty()) {
    res.skip = true;
    return res;
  }

  res.fh = FlowHypergraph(std::move(weights), std::move(capacities), edge_pins);
  const TerminalSide sides[2] = {TerminalSide::Source, TerminalSide::Target};
  const NodeID supers[2] = {res.source_super, res.target_super};
  for (int s = 0; s < 2; ++s) {
    res.fh.add_terminal(supers[s], sides[s]);
    if (visited_weight[s] == p.block_weight(blocks[s])) {
      // Side fully visited: the weight-0 super has no hyperedges. The vertex
      // visited last (farthest from the cut) anchors the block instead,
      // taking the role of the unvisited remainder.
      res.fh.add_terminal(orig_to_flow[last_visited[s]], sides[s]);
    }
  }
  return res;
}

}  // namespace hyperflow
