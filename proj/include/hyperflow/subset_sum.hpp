#pragma once

#include <cstdint>
#include <vector>

#include "hyperflow/types.hpp"

namespace hyperflow {

// Incremental pseudo-polynomial subset-sum table over isolated-vertex
// weights, with a list of maximal consecutive summable ranges. Every table
// entry keeps a pointer to its range so that ranges merge in near-constant
// time; balance queries cost O(#ranges).
class IsolatedDP {
 public:
  struct Range {
    Weight lo;
    Weight hi;
  };

  // Table entries are capped: once the total isolated weight would exceed
  // the cap, the DP deactivates and ignores further vertices.
  explicit IsolatedDP(size_t table_cap = size_t{1} << 22) : table_cap_(table_cap) {
    achievable_.assign(1, 1);
    creator_.assign(1, kNoCreator);
    range_of_.assign(1, 0);
    ranges_.push_back({0, 0});
    parent_.push_back(0);
  }

  bool active() const { return active_; }
  size_t num_members() const { return members_.size(); }
  Weight total_weight() const { return total_weight_; }
  bool contains(NodeID v) const;

  // Inserts an isolated vertex: every existing subset sum x spawns
  // x + weight, extending or merging ranges as sums become consecutive.
  // Returns false (and ignores the vertex) if the table cap is exceeded.
  bool add_vertex(NodeID v, Weight weight);

  bool achievable(Weight sum) const {
    return sum >= 0 && sum <= total_weight_ && achievable_[sum];
  }

  // Maximal, disjoint, sorted summable ranges.
  std::vector<Range> ranges() const;

  // Smallest achievable sum in [lo, hi], or -1 if the window misses every
  // range. Constant time per range.
  Weight first_achievable_in(Weight lo, Weight hi) const;
  // Achievable sum in [lo, hi] closest to `preferred`, or -1.
  Weight closest_achievable_in(Weight lo, Weight hi, Weight preferred) const;

  // Reconstructs one concrete subset of members summing to `sum` via the
  // creator back-pointers. Returns vertex ids.
  std::vector<NodeID> reconstruct(Weight sum) const;

 private:
  static constexpr uint32_t kNoCreator = std::numeric_limits<uint32_t>::max();
  uint32_t find_range(uint32_t id) const;
  void record_sum(Weight sum, uint32_t creator);

  struct Member {
    NodeID v;
    Weight weight;
  };
  std::vector<Member> members_;
  std::vector<uint8_t> achievable_;
  std::vector<uint32_t> creator_;   // member index that first produced the sum
  std::vector<uint32_t> range_of_;  // per achievable sum: range id (with redirects)
  std::vector<Range> ranges_;
  mutable std::vector<uint32_t> parent_;  // range redirect chain, path-compressed
  Weight total_weight_ = 0;
  size_t table_cap_;
  bool active_ = true;
};

}  // namespace hyperflow
