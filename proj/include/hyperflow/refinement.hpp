#pragma once

#include <vector>

#include "hyperflow/extraction.hpp"
#include "hyperflow/hfc.hpp"
#include "hyperflow/hypergraph.hpp"
#include "hyperflow/types.hpp"

namespace hyperflow {

struct RefineConfig {
  double eps = 0.03;
  uint64_t seed = 1;
  ExtractionMode mode = ExtractionMode::Hfc;
  bool use_isolated_dp = true;
  bool use_distance = true;
  bool use_mbc = true;
  int mbc_repetitions = 7;
  size_t dp_table_cap = size_t{1} << 22;
  // Extraction is randomized, so an unlucky terminal choice can make a pair
  // infeasible. A pair is retried this many times before deactivation;
  // improvements reset the counter.
  int pair_attempts = 8;
};

struct RefineStats {
  uint64_t flow_problems = 0;
  uint64_t improvements = 0;
  uint64_t pierce_steps = 0;
  uint64_t flow_computations = 0;
  uint64_t isolated_vertices = 0;
  uint64_t mbc_improvements = 0;
  uint64_t balanced_fallbacks = 0;
  uint64_t flow_problem_vertices = 0;  // summed over all solved problems
  Weight total_gain = 0;
};

// Moves the pair's vertices according to the bipartition found by HFC.
// Returns the connectivity gain, i.e. retained cut weight minus flow value.
Weight apply_refinement(const Hypergraph& hg, Partition& p, NodeID block_i, NodeID block_j,
                        const HfcResult& res, const ExtractionResult& ext);

// Flow-based k-way refinement: schedules block pairs sharing cut hyperedges
// by descending pair-cut weight, extracts a flow problem per pair, runs HFC,
// and applies results that improve connectivity (or keep it equal while
// strictly reducing the heavier of the two blocks). Improving a pair
// reactivates all pairs touching either block. Deterministic for a fixed
// seed.
Partition refine_kway(const Hypergraph& hg, Partition p, const RefineConfig& config,
                      RefineStats* stats = nullptr);

// Recursive bisection by randomized BFS growth. Standalone initial
// partitioning for the CLI; aims at proportional block weights and returns
// best effort when vertex granularity does not permit balance.
Partition greedy_initial_partition(const Hypergraph& hg, NodeID k, double eps, uint64_t seed);

}  // namespace hyperflow
