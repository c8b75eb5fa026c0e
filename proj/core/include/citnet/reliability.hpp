#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "citnet/network.hpp"

namespace citnet::reliability {

struct DistributionStats {
  bool present = false;
  double growth_rate = 0.0;   // fitted exponential rate of yearly counts
  double rank_slope = 0.0;    // log-log slope of citation count vs rank
  std::map<int, std::int64_t> lag_hist;  // forward-citation lag histogram
  int lag_mode = 0;
  double lag_mean = 0.0;
  double backward_rho = 0.0;  // Spearman of per-year mean BWDCIT vs year
};

// Fits counts(t) to a * e^{r t} + b over t = first_year..; returns r.
// Linear least squares in (a, b) with a golden-section scan over r.
double fit_exponential_rate(std::span<const std::int64_t> counts, int first_year);

// Slope of a plain least-squares line through (x, y).
double least_squares_slope(std::span<const double> x, std::span<const double> y);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

DistributionStats compute(const CitationNetwork& net);

}  // namespace citnet::reliability
