#pragma once

#include <vector>

#include "hyperflow/flow_hypergraph.hpp"
#include "hyperflow/hypergraph.hpp"
#include "hyperflow/types.hpp"

namespace hyperflow {

// Weight bound for the flow-problem region of one side.
//   Hfc:     one fifth of the side's block weight
//   HfcStar: (1 + 16 eps) * ceil(total / k) minus the other block's weight
enum class ExtractionMode : uint8_t { Hfc, HfcStar };

struct ExtractionResult {
  bool skip = false;  // pair shares no cut hyperedge or region is degenerate
  FlowHypergraph fh;
  // Per flow vertex: the original vertex id, or kInvalidNode for the two
  // super vertices that absorb the unvisited remainder of each side.
  std::vector<NodeID> flow_to_orig;
  NodeID source_super = kInvalidNode;
  NodeID target_super = kInvalidNode;
  // Piercing ratings: BFS layer from the cut boundary and original side
  // (0 = first block, 1 = second block) per flow vertex.
  std::vector<int32_t> distance;
  std::vector<uint8_t> origin;
  // Original ids of the pair's cut hyperedges that survive extraction.
  // Hyperedges touching both super vertices can never become uncut and are
  // dropped; their weight is excluded from retained_cut_weight.
  std::vector<HyperedgeID> retained_cut;
  Weight retained_cut_weight = 0;
  Weight pair_cut_weight = 0;
};

// Builds the flow problem around the cut between blocks i and j: two
// randomized weight-constrained BFS runs seeded at the cut boundary visit a
// region of each block; everything unvisited collapses into a terminal super
// vertex. When a side is visited entirely, its boundary vertices become the
// terminals instead.
ExtractionResult extract_flow_problem(const Hypergraph& hg, const Partition& p, NodeID block_i,
                                      NodeID block_j, ExtractionMode mode, double eps,
                                      uint64_t seed);

}  // namespace hyperflow
