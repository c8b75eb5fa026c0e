#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citnet/network.hpp"

#include "json.hpp"

namespace citnet::convergence {

struct ConvergenceConfig {
  int disc_year = 15;            // year of the designed discontinuity D
  int disc_backward_split = 3;   // backward citations drawn from each domain
  // Forward citations granted to the bridge patent. Non-negative values are a
  // literal count; negative values are a percentage of the best realized
  // count (-100 = exactly the top patent's count). The default 2.75x keeps
  // the bridge's persistence competitive with the oldest root patents at
  // every network size.
  std::int64_t disc_forward_boost = -275;
  int lag_gap = 2;               // years between D and general cross-citation
  double ramp_start_k = 5.0;     // replacement % at ramp start
  double ramp_end_k = 50.0;      // replacement % at horizon
  double lag_frac_p1 = 0.10;     // D's forward wiring reuses the period rules
  double lag_frac_p2 = 0.10;
  int p1_len = 5;
  int p2_len = 10;
  std::uint64_t seed = 0;

  void validate(int horizon) const;

  static ConvergenceConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct RewireEvent {
  std::string original_cited;
  std::string original_citing;
  std::string new_cited;
  int year = 0;
};

struct CombinedNetwork {
  CitationNetwork network;
  std::string discontinuity_id;
  std::vector<RewireEvent> rewire_log;
  std::int64_t skipped_replacements = 0;  // no same-year opposite candidate
  std::int64_t dropped_boost = 0;         // forward-boost slots unplaceable
};

inline const char* discontinuity_id() { return "D"; }

// Replacement percentage for patents of year `year`; linear between
// ramp_start_k at disc_year + lag_gap and ramp_end_k at horizon, 0 outside.
double ramp_k(int year, const ConvergenceConfig& cfg, int horizon);

// Fuses two independently generated networks: relabels a's patents to odd
// and b's to even numeric ids, inserts D at disc_year citing the top
// pre-disc_year persistence patents of each domain, grants D a boosted
// forward-citation count wired by the period rules over both domains, and
// ramps per-edge cross-domain backward-citation replacement from
// disc_year + lag_gap onward.
CombinedNetwork combine(const CitationNetwork& a, const CitationNetwork& b,
                        const ConvergenceConfig& cfg);

}  // namespace citnet::convergence
