#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "citnet/rng.hpp"

namespace citnet {

// Inverse-CDF sampler over a fixed discrete weight vector. Draws cost
// O(log K) via binary search on the cumulative weights.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights);

  std::size_t draw(Rng& rng) const;
  double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

 private:
  std::vector<double> cumulative_;
};

// Distributes `draws` events over the weight slots; returns per-slot counts.
std::vector<std::int64_t> multinomial_counts(std::int64_t draws,
                                             std::span<const double> weights,
                                             Rng& rng);

}  // namespace citnet
