#include "hyperflow/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperflow {

Hypergraph::Hypergraph(NodeID num_vertices, std::vector<std::vector<NodeID>> pins,
                       std::vector<Weight> vertex_weights, std::vector<Weight> hyperedge_weights)
    : num_vertices_(num_vertices), num_hyperedges_(static_cast<HyperedgeID>(pins.size())) {
  if (vertex_weights.empty()) vertex_weights.assign(num_vertices, 1);
  if (hyperedge_weights.empty()) hyperedge_weights.assign(pins.size(), 1);
  if (vertex_weights.size() != num_vertices || hyperedge_weights.size() != pins.size()) {
    throw std::invalid_argument("weight vector size mismatch");
  }
  vertex_weight_ = std::move(vertex_weights);
  hyperedge_weight_ = std::move(hyperedge_weights);
  total_vertex_weight_ = std::accumulate(vertex_weight_.begin(), vertex_weight_.end(), Weight{0});

  edge_offsets_.assign(num_hyperedges_ + 1, 0);
  for (HyperedgeID e = 0; e < num_hyperedges_; ++e) {
    edge_offsets_[e + 1] = edge_offsets_[e] + pins[e].size();
  }
  edge_pins_.reserve(edge_offsets_.back());
  std::vector<size_t> deg(num_vertices_, 0);
  for (const auto& pin_list : pins) {
    for (NodeID v : pin_list) {
      if (v >= num_vertices_) throw std::invalid_argument("pin vertex id out of range");
      edge_pins_.push_back(v);
      ++deg[v];
    }
  }
  vertex_offsets_.assign(num_vertices_ + 1, 0);
  for (NodeID v = 0; v < num_vertices_; ++v) vertex_offsets_[v + 1] = vertex_offsets_[v] + deg[v];
  vertex_edges_.resize(edge_pins_.size());
  std::vector<size_t> cursor(vertex_offsets_.begin(), vertex_offsets_.end() - 1);
  for (HyperedgeID e = 0; e < num_hyperedges_; ++e) {
    for (NodeID v : this->pins(e)) vertex_edges_[cursor[v]++] = e;
  }
}

void Hypergraph::verify_consistency() const {
  if (edge_pins_.size() != vertex_edges_.size()) {
    throw std::logic_error("pin count differs between incidence directions");
  }
  for (NodeID v = 0; v < num_vertices_; ++v) {
    if (vertex_weight_[v] < 1) throw std::logic_error("non-positive vertex weight");
  }
  for (HyperedgeID e = 0; e < num_hyperedges_; ++e) {
    if (hyperedge_weight_[e] < 1) throw std::logic_error("non-positive hyperedge weight");
    for (NodeID v : pins(e)) {
      auto inc = incident_hyperedges(v);
      if (std::count(inc.begin(), inc.end(), e) != std::count(pins(e).begin(), pins(e).end(), v)) {
        throw std::logic_error("incidence directions inconsistent");
      }
    }
  }
}

bool Hypergraph::structurally_equal(const Hypergraph& other) const {
  return num_vertices_ == other.num_vertices_ && num_hyperedges_ == other.num_hyperedges_ &&
         edge_offsets_ == other.edge_offsets_ && edge_pins_ == other.edge_pins_ &&
         vertex_weight_ == other.vertex_weight_ && hyperedge_weight_ == other.hyperedge_weight_;
}

Partition::Partition(NodeID k, std::vector<NodeID> assignment, const Hypergraph& hg)
    : k_(k), assignment_(std::move(assignment)) {
  if (assignment_.size() != hg.num_vertices()) {
    throw std::invalid_argument("assignment size does not match vertex count");
  }
  block_weight_.assign(k_, 0);
  for (NodeID v = 0; v < hg.num_vertices(); ++v) {
    if (assignment_[v] >= k_) throw std::invalid_argument("block id out of range");
    block_weight_[assignment_[v]] += hg.vertex_weight(v);
  }
}

Weight Partition::max_block_weight() const {
  return *std::max_element(block_weight_.begin(), block_weight_.end());
}

void Partition::set_block(NodeID v, NodeID b, const Hypergraph& hg) {
  assert(b < k_);
  block_weight_[assignment_[v]] -= hg.vertex_weight(v);
  block_weight_[b] += hg.vertex_weight(v);
  assignment_[v] = b;
}

void Partition::verify(const Hypergraph& hg) const {
  std::vector<Weight> w(k_, 0);
  std::vector<bool> nonempty(k_, false);
  for (NodeID v = 0; v < hg.num_vertices(); ++v) {
    w[assignment_[v]] += hg.vertex_weight(v);
    nonempty[assignment_[v]] = true;
  }
  if (w != block_weight_) throw std::logic_error("cached block weights are stale");
  for (NodeID b = 0; b < k_; ++b) {
    if (!nonempty[b]) throw std::logic_error("empty block " + std::to_string(b));
  }
}

Weight connectivity_metric(const Hypergraph& hg, const Partition& p) {
  Weight total = 0;
  std::vector<uint32_t> seen(p.k(), 0);
  uint32_t stamp = 0;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    ++stamp;
    Weight lambda = 0;
    for (NodeID v : hg.pins(e)) {
      const NodeID b = p.block(v);
      if (seen[b] != stamp) {
        seen[b] = stamp;
        ++lambda;
      }
    }
    if (lambda > 1) total += hg.hyperedge_weight(e) * (lambda - 1);
  }
  return total;
}

double imbalance(const Hypergraph& hg, const Partition& p) {
  const double avg = static_cast<double>(hg.total_vertex_weight()) / p.k();
  return static_cast<double>(p.max_block_weight()) / avg - 1.0;
}

Weight max_admissible_block_weight(Weight total_weight, NodeID k, double eps) {
  const long double bound = (1.0L + static_cast<long double>(eps)) * static_cast<long double>(total_weight) / k;
  return static_cast<Weight>(std::floor(bound + 1e-9L));
}

bool is_balanced(const Hypergraph& hg, const Partition& p, double eps) {
  return p.max_block_weight() <= max_admissible_block_weight(hg.total_vertex_weight(), p.k(), eps);
}

Weight pair_cut_weight(const Hypergraph& hg, const Partition& p, NodeID i, NodeID j) {
  Weight total = 0;
  for (HyperedgeID e = 0; e < hg.num_hyperedges(); ++e) {
    bool in_i = false, in_j = false;
    for (NodeID v : hg.pins(e)) {
      in_i |= p.block(v) == i;
      in_j |= p.block(v) == j;
      if (in_i && in_j) break;
    }
    if (in_i && in_j) total += hg.hyperedge_weight(e);
  }
  return total;
}

}  // namespace hyperflow
