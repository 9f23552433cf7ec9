#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cmj {

// Dense symmetric matrix of nonnegative pair weights over points [0, k).
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t k) : k_(k), data_(k * k, 0) {}

  std::size_t size() const noexcept { return k_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * k_ + j]; }
  void set(std::size_t i, std::size_t j, std::int64_t w);

 private:
  std::size_t k_ = 0;
  std::vector<std::int64_t> data_;
};

struct PerfectMatching {
  // Pairs (i, j) with i < j, sorted by i.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::int64_t weight = 0;

  friend bool operator==(const PerfectMatching&, const PerfectMatching&) = default;
};

// Minimum-weight perfect matching via Edmonds' blossom algorithm. Among all
// optimal matchings, returns the one whose sorted pair list is
// lexicographically smallest.
PerfectMatching min_weight_perfect_matching(const WeightMatrix& weights);

// Optimal weight only; skips the tie-breaking pass.
std::int64_t min_perfect_matching_weight(const WeightMatrix& weights);

// Same restricted to the listed points (weights indexed by original point).
std::int64_t min_perfect_matching_weight(const WeightMatrix& weights,
                                         std::span<const std::size_t> points);

// Exhaustive subset dynamic program, k <= 16. Same tie-breaking rule as
// min_weight_perfect_matching; used as an independent cross-check.
PerfectMatching min_weight_perfect_matching_dp(const WeightMatrix& weights);

inline constexpr std::size_t kMaxDpPoints = 16;

// Maximum-weight matching on a general graph. When max_cardinality is set,
// only maximum-cardinality matchings are considered. Returns mate[v] or -1.
std::vector<long> max_weight_matching(std::size_t vertex_count,
                                      std::span<const std::pair<std::size_t, std::size_t>> edges,
                                      std::span<const std::int64_t> weights,
                                      bool max_cardinality);

}  // namespace cmj
