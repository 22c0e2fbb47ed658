#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "confopt/config.hpp"

namespace confopt::detail {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Cached w(u) over a counter vector q owned by the caller.
class WeightTable {
 public:
  WeightTable(const OptimizerConfig& cfg, std::optional<std::uint64_t> q_max,
              std::vector<std::uint64_t>& q)
      : cfg_(cfg), q_max_(q_max), q_(q), cache_(q.size(), 1.0) {
    for (std::size_t u = 0; u < q_.size(); ++u) cache_[u] = weight(q_[u], cfg_, q_max_);
  }

  double cached(std::size_t u) const { return cache_[u]; }

  /// Returns true when u crossed q_max in abort mode.
  bool bump(std::size_t u) {
    ++q_[u];
    cache_[u] = weight(q_[u], cfg_, q_max_);
    return q_max_ && cfg_.threshold_mode == ThresholdMode::abort_restart && q_[u] > *q_max_;
  }

  void reset() {
    std::fill(q_.begin(), q_.end(), 0);
    std::fill(cache_.begin(), cache_.end(), 1.0);
  }

 private:
  const OptimizerConfig& cfg_;
  std::optional<std::uint64_t> q_max_;
  std::vector<std::uint64_t>& q_;
  std::vector<double> cache_;
};

inline std::vector<std::uint64_t> initial_q(std::span<const std::uint64_t> q, std::size_t n) {
  if (q.empty()) return std::vector<std::uint64_t>(n, 0);
  if (q.size() != n) throw std::invalid_argument("q has the wrong length");
  return {q.begin(), q.end()};
}

/// Class multiplier f: Gaussian with mean 1, clamped at 0.
inline double draw_multiplier(std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> dist(1.0, sigma);
  return std::max(0.0, dist(rng));
}

inline std::vector<std::uint8_t> pinned_mask(std::span<const std::uint8_t> pinned, std::size_t n) {
  if (pinned.empty()) return std::vector<std::uint8_t>(n, 0);
  if (pinned.size() != n) throw std::invalid_argument("pinned mask has the wrong length");
  return {pinned.begin(), pinned.end()};
}

}  // namespace confopt::detail
