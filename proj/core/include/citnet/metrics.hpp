#pragma once

#include <string>
#include <vector>

#include "citnet/mainpath.hpp"
#include "citnet/network.hpp"
#include "citnet/persistence.hpp"

namespace citnet::metrics {

// m1 = FWDCIT; m2 = P; m3 = FWDCIT * P; m4 = 1/MP - 1 (HPPs with a
// persistence gap only); m5 = PATH/(1 + BWDCIT + PATH) * P.
struct MetricRow {
  std::string id;
  int year = 0;
  int fwdcit = 0;
  int bwdcit = 0;
  double p = 0.0;
  double np = 0.0;
  int path = 0;
  double mp = 0.0;
  bool has_mp = false;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  bool has_m4 = false;
  double m5 = 0.0;
};

struct MetricReport {
  std::vector<MetricRow> rows;  // aligned with node indices
};

constexpr int kMetricCount = 5;

MetricReport compute_metrics(const CitationNetwork& net,
                             const persistence::PersistenceTable& table,
                             const mainpath::MainPathGraph& mpg);

struct RankedEntry {
  int node = 0;
  double value = 0.0;
  bool has_value = true;
  double normalized = 0.0;
};

// Full ranking for metric_id in 1..5: descending value, ties by higher P,
// then higher FWDCIT, then ascending id; rows without the metric rank
// below all present values. normalized = value / max value.
std::vector<RankedEntry> rank_all(const MetricReport& report, int metric_id);

// First min(k, population) entries of rank_all.
std::vector<RankedEntry> rank(const MetricReport& report, int metric_id, int k);

// 1-based position of `node` in the metric's full ranking.
std::int64_t rank_of(const MetricReport& report, int metric_id, int node);

}  // namespace citnet::metrics
