#pragma once

#include <cstdint>
#include <limits>
#include <utility>

namespace hyperflow {

using NodeID = uint32_t;
using HyperedgeID = uint32_t;
using Weight = int64_t;
using Flow = int64_t;

constexpr NodeID kInvalidNode = std::numeric_limits<NodeID>::max();
constexpr HyperedgeID kInvalidHyperedge = std::numeric_limits<HyperedgeID>::max();
constexpr Flow kMaxFlow = std::numeric_limits<Flow>::max();

// Deterministic xorshift-based generator. All randomized choices in the
// library draw from this so that identical seeds replay identical runs.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  uint64_t below(uint64_t n) { return n <= 1 ? 0 : next() % n; }

  template <typename It>
  void shuffle(It begin, It end) {
    const auto n = static_cast<uint64_t>(end - begin);
    for (uint64_t i = n; i > 1; --i) {
      std::swap(begin[i - 1], begin[below(i)]);
    }
  }

 private:
  uint64_t state_;
};

inline uint64_t combine_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  Rng rng(seed ^ (a * 0x9e3779b97f4a7c15ull) ^ (b * 0xc2b2ae3d27d4eb4full) ^ (c * 0x165667b19e3779f9ull));
  return rng.next();
}

}  // namespace hyperflow
