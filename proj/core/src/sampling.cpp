#include "citnet/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace citnet {

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
  cumulative_.reserve(weights.size());
  double acc = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("DiscreteSampler: negative weight");
    acc += w;
    cumulative_.push_back(acc);
  }
  if (!cumulative_.empty() && acc <= 0.0)
    throw std::invalid_argument("DiscreteSampler: all weights zero");
}

std::size_t DiscreteSampler::draw(Rng& rng) const {
  const double u = rng.next_double() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;  // u == total after rounding
  return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<std::int64_t> multinomial_counts(std::int64_t draws,
                                             std::span<const double> weights,
                                             Rng& rng) {
  std::vector<std::int64_t> counts(weights.size(), 0);
  if (draws <= 0 || weights.empty()) return counts;
  DiscreteSampler sampler(weights);
  for (std::int64_t i = 0; i < draws; ++i) counts[sampler.draw(rng)]++;
  return counts;
}

}  // namespace citnet
