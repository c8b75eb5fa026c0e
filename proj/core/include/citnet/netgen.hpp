#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "citnet/network.hpp"
#include "citnet/rng.hpp"

#include "json.hpp"

namespace citnet::netgen {

struct GenerationConfig {
  int n = 1000;              // total patent count
  int horizon = 30;          // years covered
  double growth_rate = 0.05;
  double growth_a = 1.0;
  double growth_b = -1.0;
  double powerlaw_a = 1.0;
  double powerlaw_b = 0.5;
  double avg_citations = 3.0;
  double lag_frac_p1 = 0.10;
  double lag_frac_p2 = 0.10;
  int p1_len = 5;
  int p2_len = 10;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  static GenerationConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct GenerationTrace {
  std::vector<std::int64_t> yearly_counts;    // index 0 unused, 1..horizon
  std::vector<std::int64_t> citation_counts;  // per rank, 0-based rank 1..n
  std::vector<int> assigned_years;            // per rank
  std::int64_t dropped_citations = 0;
};

// Per-year probability weights y(t) = growth_a * e^{growth_rate * t} + growth_b,
// t = 1..horizon (unnormalized).
std::vector<double> year_weights(const GenerationConfig& cfg);

// Per-rank probability weights R^{-powerlaw_b}, R = 1..n (unnormalized; the
// powerlaw_a prefactor cancels in normalization).
std::vector<double> rank_weights(int n, double powerlaw_b);

// Citation-lag quotas for a patent with F forward citations:
// q1 within (t, t+p1_len], q2 more within (t, t+p2_len], q3 anywhere later.
struct PeriodQuotas {
  std::int64_t q1 = 0, q2 = 0, q3 = 0;
};
PeriodQuotas period_quotas(std::int64_t citations, const GenerationConfig& cfg);

// Step 1: multinomial assignment of n patents to years 1..horizon.
std::vector<std::int64_t> yearly_counts(const GenerationConfig& cfg, Rng& rng);

// Step 2: multinomial assignment of avg_citations*n citation events to ranks.
std::vector<std::int64_t> citation_counts(const GenerationConfig& cfg, Rng& rng);

// Step 3: per-rank year assignment honoring the period quotas; most-cited
// patents are placed first and year capacities consumed as placed.
std::vector<int> assign_years(const std::vector<std::int64_t>& citation_counts,
                              const std::vector<std::int64_t>& yearly_counts,
                              const GenerationConfig& cfg, Rng& rng);

// Step 4: draw the concrete citing patents for every patent; unplaceable
// citation slots are dropped and counted.
CitationNetwork wire_citations(const std::vector<int>& assigned_years,
                               const std::vector<std::int64_t>& citation_counts,
                               const GenerationConfig& cfg, Rng& rng,
                               std::int64_t* dropped);

// The full four-step procedure; deterministic for a fixed seed.
std::pair<CitationNetwork, GenerationTrace> generate(const GenerationConfig& cfg);

// Zero-padded id for the patent at 1-based rank r ("p0000001", ...).
std::string rank_id(int rank);

}  // namespace citnet::netgen
