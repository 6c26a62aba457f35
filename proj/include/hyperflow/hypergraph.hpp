#pragma once

#include <cassert>
#include <span>
#include <string>
#include <vector>

#include "hyperflow/types.hpp"

namespace hyperflow {

// Immutable weighted hypergraph in index-based adjacency form.
// Both incidence directions (hyperedge -> pins, vertex -> hyperedges) are
// navigable in O(degree). Weights are positive integers.
class Hypergraph {
 public:
  Hypergraph() = default;

  // pins[e] lists the vertices of hyperedge e (0-based ids).
  // Empty weight vectors default to unit weights.
  Hypergraph(NodeID num_vertices, std::vector<std::vector<NodeID>> pins,
             std::vector<Weight> vertex_weights = {},
             std::vector<Weight> hyperedge_weights = {});

  NodeID num_vertices() const { return num_vertices_; }
  HyperedgeID num_hyperedges() const { return num_hyperedges_; }
  size_t num_pins() const { return edge_pins_.size(); }

  Weight vertex_weight(NodeID v) const { return vertex_weight_[v]; }
  Weight hyperedge_weight(HyperedgeID e) const { return hyperedge_weight_[e]; }
  Weight total_vertex_weight() const { return total_vertex_weight_; }

  std::span<const NodeID> pins(HyperedgeID e) const {
    return {edge_pins_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }
  std::span<const HyperedgeID> incident_hyperedges(NodeID v) const {
    return {vertex_edges_.data() + vertex_offsets_[v], vertex_offsets_[v + 1] - vertex_offsets_[v]};
  }
  size_t hyperedge_size(HyperedgeID e) const { return edge_offsets_[e + 1] - edge_offsets_[e]; }
  size_t degree(NodeID v) const { return vertex_offsets_[v + 1] - vertex_offsets_[v]; }

  // Full cross-scan of both incidence directions plus weight positivity.
  // Throws std::logic_error on violation. Used by tests and after parsing.
  void verify_consistency() const;

  bool structurally_equal(const Hypergraph& other) const;

 private:
  NodeID num_vertices_ = 0;
  HyperedgeID num_hyperedges_ = 0;
  std::vector<size_t> edge_offsets_;
  std::vector<NodeID> edge_pins_;
  std::vector<size_t> vertex_offsets_;
  std::vector<HyperedgeID> vertex_edges_;
  std::vector<Weight> vertex_weight_;
  std::vector<Weight> hyperedge_weight_;
  Weight total_vertex_weight_ = 0;
};

// Assignment of every vertex to a block in [0, k), with cached block weights.
class Partition {
 public:
  Partition() = default;
  Partition(NodeID k, std::vector<NodeID> assignment, const Hypergraph& hg);

  NodeID k() const { return k_; }
  NodeID block(NodeID v) const { return assignment_[v]; }
  const std::vector<NodeID>& assignment() const { return assignment_; }
  Weight block_weight(NodeID b) const { return block_weight_[b]; }
  const std::vector<Weight>& block_weights() const { return block_weight_; }
  Weight max_block_weight() const;

  // Reassign v to block b, keeping block weights in sync.
  void set_block(NodeID v, NodeID b, const Hypergraph& hg);

  // Throws std::logic_error if a block is empty or weights are stale.
  void verify(const Hypergraph& hg) const;

 private:
  NodeID k_ = 0;
  std::vector<NodeID> assignment_;
  std::vector<Weight> block_weight_;
};

// Sum over hyperedges of omega(e) * (number of blocks touched - 1).
Weight connectivity_metric(const Hypergraph& hg, const Partition& p);

// max_i block_weight(i) / (total / k) - 1. A partition is eps-balanced iff
// this is <= eps.
double imbalance(const Hypergraph& hg, const Partition& p);

// Largest integer block weight admissible under the balance constraint
// phi(V_i) <= (1 + eps) * phi(V) / k.
Weight max_admissible_block_weight(Weight total_weight, NodeID k, double eps);

bool is_balanced(const Hypergraph& hg, const Partition& p, double eps);

// Weight of hyperedges with pins in both block i and block j.
Weight pair_cut_weight(const Hypergraph& hg, const Partition& p, NodeID i, NodeID j);

}  // namespace hyperflow
