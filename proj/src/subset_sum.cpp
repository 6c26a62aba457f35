#include "hyperflow/subset_sum.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>

namespace hyperflow {

bool IsolatedDP::contains(NodeID v) const {
  return std::any_of(members_.begin(), members_.end(), [&](const Member& m) { return m.v == v; });
}

uint32_t IsolatedDP::find_range(uint32_t id) const {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

void IsolatedDP::record_sum(Weight sum, uint32_t creator) {
  achievable_[sum] = 1;
  creator_[sum] = creator;
  const bool left = sum > 0 && achievable_[sum - 1];
  const bool right = sum < static_cast<Weight>(achievable_.size()) - 1 && achievable_[sum + 1];
  if (left && right) {
    const uint32_t l = find_range(range_of_[sum - 1]);
    const uint32_t r = find_range(range_of_[sum + 1]);
    ranges_[l].hi = ranges_[r].hi;
    parent_[r] = l;
    range_of_[sum] = l;
  } else if (left) {
    const uint32_t l = find_range(range_of_[sum - 1]);
    ranges_[l].hi = sum;
    range_of_[sum] = l;
  } else if (right) {
    const uint32_t r = find_range(range_of_[sum + 1]);
    ranges_[r].lo = sum;
    range_of_[sum] = r;
  } else {
    const uint32_t id = static_cast<uint32_t>(ranges_.size());
    ranges_.push_back({sum, sum});
    parent_.push_back(id);
    range_of_[sum] = id;
  }
}

bool IsolatedDP::add_vertex(NodeID v, Weight weight) {
  assert(weight > 0);
  if (!active_) return false;
  const Weight new_total = total_weight_ + weight;
  if (static_cast<size_t>(new_total) + 1 > table_cap_) {
    active_ = false;
    return false;
  }
  achievable_.resize(new_total + 1, 0);
  creator_.resize(new_total + 1, kNoCreator);
  range_of_.resize(new_total + 1, 0);

  const uint32_t member_idx = static_cast<uint32_t>(members_.size());
  members_.push_back({v, weight});
  // Descending scan so sums added in this round are not reused.
  for (Weight x = total_weight_; x >= 0; --x) {
    if (achievable_[x] && !achievable_[x + weight]) record_sum(x + weight, member_idx);
  }
  total_weight_ = new_total;
  return true;
}

std::vector<IsolatedDP::Range> IsolatedDP::ranges() const {
  std::vector<Range> out;
  for (uint32_t id = 0; id < ranges_.size(); ++id) {
    if (find_range(id) == id) out.push_back(ranges_[id]);
  }
  std::sort(out.begin(), out.end(), [](const Range& a, const Range& b) { return a.lo < b.lo; });
  return out;
}

Weight IsolatedDP::first_achievable_in(Weight lo, Weight hi) const {
  for (const Range& r : ranges()) {
    if (r.hi < lo) continue;
    if (r.lo > hi) break;
    return std::max(r.lo, lo);
  }
  return -1;
}

Weight IsolatedDP::closest_achievable_in(Weight lo, Weight hi, Weight preferred) const {
  Weight best = -1;
  for (const Range& r : ranges()) {
    const Weight a = std::max(r.lo, lo);
    const Weight b = std::min(r.hi, hi);
    if (a > b) continue;
    const Weight x = std::clamp(preferred, a, b);
    if (best == -1 || std::llabs(x - preferred) < std::llabs(best - preferred)) best = x;
  }
  return best;
}

std::vector<NodeID> IsolatedDP::reconstruct(Weight sum) const {
  assert(achievable(sum));
  std::vector<NodeID> out;
  while (sum > 0) {
    const uint32_t m = creator_[sum];
    assert(m != kNoCreator);
    out.push_back(members_[m].v);
    sum -= members_[m].weight;
  }
  return out;
}

}  // namespace hyperflow
