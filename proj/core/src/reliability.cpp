#include "citnet/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace citnet::reliability {

namespace {

double rss_for_rate(std::span<const std::int64_t> counts, int first_year,
                    double r) {
  // Least squares over (a, b) for fixed rate via 2x2 normal equations.
  double sxx = 0, sx = 0, sn = 0, sxy = 0, sy = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double t = static_cast<double>(first_year) + static_cast<double>(i);
    const double x = std::exp(r * t);
    const double y = static_cast<double>(counts[i]);
    sxx += x * x;
    sx += x;
    sn += 1;
    sxy += x * y;
    sy += y;
  }
  const double det = sxx * sn - sx * sx;
  if (std::abs(det) < 1e-12) return 1e300;
  const double a = (sxy * sn - sy * sx) / det;
  const double b = (sxx * sy - sx * sxy) / det;
  double rss = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double t = static_cast<double>(first_year) + static_cast<double>(i);
    const double e = a * std::exp(r * t) + b - static_cast<double>(counts[i]);
    rss += e * e;
  }
  return rss;
}

}  // namespace

double fit_exponential_rate(std::span<const std::int64_t> counts,
                            int first_year) {
  if (counts.size() < 3) return 0.0;
  double best_r = 0.001, best_rss = rss_for_rate(counts, first_year, best_r);
  for (int i = 1; i <= 300; ++i) {
    const double r = 0.001 + 0.001 * i;  // scan up to 0.301
    const double rss = rss_for_rate(counts, first_year, r);
    if (rss < best_rss) {
      best_rss = rss;
      best_r = r;
    }
  }
  // Golden-section refinement around the grid winner.
  double lo = std::max(1e-4, best_r - 0.001), hi = best_r + 0.001;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - phi * (hi - lo);
    const double m2 = lo + phi * (hi - lo);
    if (rss_for_rate(counts, first_year, m1) <
        rss_for_rate(counts, first_year, m2))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2 || x.size() != y.size()) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-12) return 0.0;
  return (n * sxy - sx * sy) / det;
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double avg = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const auto n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (rx[i] - mx) * (ry[i] - my);
    vx += (rx[i] - mx) * (rx[i] - mx);
    vy += (ry[i] - my) * (ry[i] - my);
  }
  if (vx <= 0 || vy <= 0) return 0.0;
  return cov / std::sqrt(vx * vy);
}

DistributionStats compute(const CitationNetwork& net) {
  DistributionStats stats;
  if (net.node_count() == 0) return stats;
  stats.present = true;
  const int min_year = net.min_year();
  const int max_year = net.max_year();
  const int span = max_year - min_year + 1;

  std::vector<std::int64_t> yearly(static_cast<std::size_t>(span), 0);
  for (const auto& rec : net.nodes())
    yearly[static_cast<std::size_t>(rec.year - min_year)]++;
  stats.growth_rate = fit_exponential_rate(yearly, min_year);

  // Citation frequency: realized forward citations sorted descending, top
  // half of ranks, zero counts excluded.
  std::vector<std::int64_t> counts;
  counts.reserve(static_cast<std::size_t>(net.node_count()));
  for (int v = 0; v < net.node_count(); ++v)
    counts.push_back(net.fwdcit(v));
  std::sort(counts.rbegin(), counts.rend());
  std::vector<double> lx, ly;
  for (std::size_t r = 0; r < counts.size() / 2; ++r) {
    if (counts[r] <= 0) break;
    lx.push_back(std::log(static_cast<double>(r + 1)));
    ly.push_back(std::log(static_cast<double>(counts[r])));
  }
  stats.rank_slope = least_squares_slope(lx, ly);

  // Citation lags, pooled over patents old enough to have a full window.
  double lag_sum = 0;
  std::int64_t lag_n = 0;
  for (int v = 0; v < net.node_count(); ++v) {
    if (net.node(v).year > max_year - 10) continue;
    for (int w : net.forward(v)) {
      const int lag = net.node(w).year - net.node(v).year;
      stats.lag_hist[lag]++;
      lag_sum += lag;
      lag_n++;
    }
  }
  std::int64_t best = -1;
  for (const auto& [lag, c] : stats.lag_hist) {
    if (c > best) {  // ties keep the smallest lag (map is ordered)
      best = c;
      stats.lag_mode = lag;
    }
  }
  stats.lag_mean = lag_n > 0 ? lag_sum / static_cast<double>(lag_n) : 0.0;

  // Mean backward citations per year, over years with at least 5 patents.
  std::vector<double> years, means;
  for (int t = 0; t < span; ++t) {
    std::int64_t patents = 0, cites = 0;
    for (int v = 0; v < net.node_count(); ++v) {
      if (net.node(v).year != min_year + t) continue;
      patents++;
      cites += net.bwdcit(v);
    }
    if (patents >= 5) {
      years.push_back(static_cast<double>(min_year + t));
      means.push_back(static_cast<double>(cites) / static_cast<double>(patents));
    }
  }
  stats.backward_rho = spearman(years, means);
  return stats;
}

}  // namespace citnet::reliability
