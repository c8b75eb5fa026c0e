#include "citnet/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace citnet::metrics {

MetricReport compute_metrics(const CitationNetwork& net,
                             const persistence::PersistenceTable& table,
                             const mainpath::MainPathGraph& mpg) {
  const int n = net.node_count();
  MetricReport report;
  report.rows.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto& rec = net.node(v);
    MetricRow row;
    row.id = rec.id;
    row.year = rec.year;
    row.fwdcit = net.fwdcit(v);
    row.bwdcit = net.bwdcit(v);
    row.p = table.raw[static_cast<std::size_t>(v)];
    row.np = table.normalized[static_cast<std::size_t>(v)];
    row.path = mpg.path_count[static_cast<std::size_t>(v)];
    row.has_mp = mpg.has_mp[static_cast<std::size_t>(v)] != 0;
    if (row.has_mp) row.mp = mpg.mp_gap[static_cast<std::size_t>(v)];
    row.m1 = row.fwdcit;
    row.m2 = row.p;
    row.m3 = row.fwdcit * row.p;
    if (row.has_mp && row.mp > 0.0) {
      row.m4 = 1.0 / row.mp - 1.0;
      row.has_m4 = true;
    }
    row.m5 = row.path > 0
                 ? static_cast<double>(row.path) /
                       (1.0 + row.bwdcit + row.path) * row.p
                 : 0.0;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

struct MetricValue {
  double value = 0.0;
  bool present = true;
};

MetricValue metric_value(const MetricRow& row, int metric_id) {
  switch (metric_id) {
    case 1: return {row.m1, true};
    case 2: return {row.m2, true};
    case 3: return {row.m3, true};
    case 4: return {row.m4, row.has_m4};
    case 5: return {row.m5, true};
    default: throw std::invalid_argument("unknown metric id");
  }
}

}  // namespace

std::vector<RankedEntry> rank_all(const MetricReport& report, int metric_id) {
  const auto n = report.rows.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto key = [&](int v) { return metric_value(report.rows[static_cast<std::size_t>(v)], metric_id); };
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const MetricValue ka = key(a), kb = key(b);
    if (ka.present != kb.present) return ka.present;
    if (ka.present && ka.value != kb.value) return ka.value > kb.value;
    const auto& ra = report.rows[static_cast<std::size_t>(a)];
    const auto& rb = report.rows[static_cast<std::size_t>(b)];
    if (ra.p != rb.p) return ra.p > rb.p;
    if (ra.fwdcit != rb.fwdcit) return ra.fwdcit > rb.fwdcit;
    return ra.id < rb.id;
  });
  double max_value = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const MetricValue v = key(order[i]);
    if (v.present) max_value = std::max(max_value, v.value);
  }
  std::vector<RankedEntry> out;
  out.reserve(n);
  for (int v : order) {
    const MetricValue mv = key(v);
    RankedEntry e;
    e.node = v;
    e.value = mv.value;
    e.has_value = mv.present;
    e.normalized = (mv.present && max_value > 0.0) ? mv.value / max_value : 0.0;
    out.push_back(e);
  }
  return out;
}

std::vector<RankedEntry> rank(const MetricReport& report, int metric_id, int k) {
  auto all = rank_all(report, metric_id);
  if (k >= 0 && static_cast<std::size_t>(k) < all.size())
    all.resize(static_cast<std::size_t>(k));
  return all;
}

std::int64_t rank_of(const MetricReport& report, int metric_id, int node) {
  const auto all = rank_all(report, metric_id);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i].node == node) return static_cast<std::int64_t>(i) + 1;
  throw std::invalid_argument("rank_of: node not in report");
}

}  // namespace citnet::metrics
