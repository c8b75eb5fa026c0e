#include "citnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "citnet/sampling.hpp"

namespace citnet::netgen {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid config field `") +
                                       field + "`: " + what);
}

template <typename T>
T get_field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("invalid config field `") + key +
                                "`: wrong type");
  }
}

}  // namespace

void GenerationConfig::validate() const {
  require(n >= 1, "n", "must be >= 1");
  require(horizon >= 2, "horizon", "must be >= 2");
  require(growth_rate > 0.0, "growth_rate", "must be > 0");
  require(avg_citations >= 0.0, "avg_citations", "must be >= 0");
  require(lag_frac_p1 >= 0.0, "lag_frac_p1", "must be >= 0");
  require(lag_frac_p2 >= 0.0, "lag_frac_p2", "must be >= 0");
  require(lag_frac_p1 + lag_frac_p2 <= 1.0, "lag_frac_p1",
          "lag_frac_p1 + lag_frac_p2 must be <= 1");
  require(p1_len >= 1, "p1_len", "must be >= 1");
  require(p1_len < p2_len, "p2_len", "must exceed p1_len");
  require(p2_len < horizon, "p2_len", "must be below horizon");
}

GenerationConfig GenerationConfig::from_json(const nlohmann::json& j) {
  static const char* known[] = {"n",           "horizon",      "growth_rate",
                                "growth_a",    "growth_b",     "powerlaw_a",
                                "powerlaw_b",  "avg_citations", "lag_frac_p1",
                                "lag_frac_p2", "p1_len",       "p2_len",
                                "seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known))
      throw std::invalid_argument("unknown config field `" + it.key() + "`");
  }
  GenerationConfig cfg;
  cfg.n = get_field(j, "n", cfg.n);
  cfg.horizon = get_field(j, "horizon", cfg.horizon);
  cfg.growth_rate = get_field(j, "growth_rate", cfg.growth_rate);
  cfg.growth_a = get_field(j, "growth_a", cfg.growth_a);
  cfg.growth_b = get_field(j, "growth_b", cfg.growth_b);
  cfg.powerlaw_a = get_field(j, "powerlaw_a", cfg.powerlaw_a);
  cfg.powerlaw_b = get_field(j, "powerlaw_b", cfg.powerlaw_b);
  cfg.avg_citations = get_field(j, "avg_citations", cfg.avg_citations);
  cfg.lag_frac_p1 = get_field(j, "lag_frac_p1", cfg.lag_frac_p1);
  cfg.lag_frac_p2 = get_field(j, "lag_frac_p2", cfg.lag_frac_p2);
  cfg.p1_len = get_field(j, "p1_len", cfg.p1_len);
  cfg.p2_len = get_field(j, "p2_len", cfg.p2_len);
  cfg.seed = get_field(j, "seed", cfg.seed);
  return cfg;
}

nlohmann::json GenerationConfig::to_json() const {
  return {{"n", n},
          {"horizon", horizon},
          {"growth_rate", growth_rate},
          {"growth_a", growth_a},
          {"growth_b", growth_b},
          {"powerlaw_a", powerlaw_a},
          {"powerlaw_b", powerlaw_b},
          {"avg_citations", avg_citations},
          {"lag_frac_p1", lag_frac_p1},
          {"lag_frac_p2", lag_frac_p2},
          {"p1_len", p1_len},
          {"p2_len", p2_len},
          {"seed", seed}};
}

std::vector<double> year_weights(const GenerationConfig& cfg) {
  std::vector<double> w(static_cast<std::size_t>(cfg.horizon));
  for (int t = 1; t <= cfg.horizon; ++t) {
    const double y = cfg.growth_a * std::exp(cfg.growth_rate * t) + cfg.growth_b;
    w[static_cast<std::size_t>(t - 1)] = std::max(y, 0.0);
  }
  return w;
}

std::vector<double> rank_weights(int n, double powerlaw_b) {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r)
    w[static_cast<std::size_t>(r - 1)] = std::pow(static_cast<double>(r), -powerlaw_b);
  return w;
}

PeriodQuotas period_quotas(std::int64_t citations, const GenerationConfig& cfg) {
  PeriodQuotas q;
  if (citations <= 0) return q;
  q.q1 = static_cast<std::int64_t>(
      std::ceil(cfg.lag_frac_p1 * static_cast<double>(citations)));
  q.q1 = std::min(q.q1, citations);
  q.q2 = static_cast<std::int64_t>(
      std::ceil(cfg.lag_frac_p2 * static_cast<double>(citations - q.q1)));
  q.q2 = std::min(q.q2, citations - q.q1);
  q.q3 = citations - q.q1 - q.q2;
  return q;
}

std::vector<std::int64_t> yearly_counts(const GenerationConfig& cfg, Rng& rng) {
  auto weights = year_weights(cfg);
  return multinomial_counts(cfg.n, weights, rng);
}

std::vector<std::int64_t> citation_counts(const GenerationConfig& cfg, Rng& rng) {
  auto weights = rank_weights(cfg.n, cfg.powerlaw_b);
  const auto events = static_cast<std::int64_t>(
      std::llround(cfg.avg_citations * static_cast<double>(cfg.n)));
  return multinomial_counts(events, weights, rng);
}

std::vector<int> assign_years(const std::vector<std::int64_t>& citation_counts,
                              const std::vector<std::int64_t>& yearly_counts,
                              const GenerationConfig& cfg, Rng& rng) {
  const int n = static_cast<int>(citation_counts.size());
  const int horizon = cfg.horizon;

  // Total patents in years (lo-1, hi]; fixed by step 1, independent of
  // placement order, since every potential citer ends up somewhere.
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(horizon) + 1, 0);
  for (int t = 1; t <= horizon; ++t)
    prefix[static_cast<std::size_t>(t)] =
        prefix[static_cast<std::size_t>(t - 1)] +
        yearly_counts[static_cast<std::size_t>(t - 1)];
  auto window = [&](int lo, int hi) -> std::int64_t {
    hi = std::min(hi, horizon);
    if (lo > hi) return 0;
    return prefix[static_cast<std::size_t>(hi)] -
           prefix[static_cast<std::size_t>(lo - 1)];
  };

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  // Most-cited first: high-F patents have the fewest feasible years.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return citation_counts[static_cast<std::size_t>(a)] >
           citation_counts[static_cast<std::size_t>(b)];
  });

  std::vector<std::int64_t> capacity = yearly_counts;
  std::vector<int> year(static_cast<std::size_t>(n), 0);
  std::vector<int> feasible;
  for (int rank : order) {
    const std::int64_t f = citation_counts[static_cast<std::size_t>(rank)];
    const PeriodQuotas q = period_quotas(f, cfg);
    feasible.clear();
    for (int t = 1; t <= horizon; ++t) {
      if (capacity[static_cast<std::size_t>(t - 1)] <= 0) continue;
      if (window(t + 1, t + cfg.p1_len) < q.q1) continue;
      if (window(t + 1, t + cfg.p2_len) < q.q1 + q.q2) continue;
      if (window(t + 1, horizon) < f) continue;
      feasible.push_back(t);
    }
    int t;
    if (!feasible.empty()) {
      t = feasible[rng.next_below(feasible.size())];
    } else {
      // Fallback: the year with the most later patents, i.e. the earliest
      // year with remaining capacity. Unplaceable slots are dropped later.
      t = 0;
      for (int cand = 1; cand <= horizon; ++cand) {
        if (capacity[static_cast<std::size_t>(cand - 1)] > 0) {
          t = cand;
          break;
        }
      }
      if (t == 0) throw std::runtime_error("assign_years: year capacity exhausted");
    }
    year[static_cast<std::size_t>(rank)] = t;
    capacity[static_cast<std::size_t>(t - 1)]--;
  }
  return year;
}

namespace {

// Draws `want` distinct patents from years [lo, hi], excluding `chosen`.
// Rejection sampling while the window is mostly free, otherwise an explicit
// candidate list with a partial Fisher-Yates shuffle.
struct YearPool {
  std::vector<std::vector<int>> members;  // per year, ascending rank
  std::vector<std::int64_t> prefix;       // cumulative member counts

  std::int64_t count(int lo, int hi) const {
    if (lo > hi) return 0;
    return prefix[static_cast<std::size_t>(hi)] -
           prefix[static_cast<std::size_t>(lo - 1)];
  }

  int at(int lo, std::int64_t offset) const {
    // offset is within [0, count(lo, H)); locate the year then the member.
    auto base = prefix[static_cast<std::size_t>(lo - 1)];
    auto it = std::upper_bound(prefix.begin() + lo, prefix.end(), base + offset);
    const int year = static_cast<int>(it - prefix.begin());
    const auto inner = base + offset - prefix[static_cast<std::size_t>(year - 1)];
    return members[static_cast<std::size_t>(year)][static_cast<std::size_t>(inner)];
  }
};

std::int64_t draw_window(const YearPool& pool, int lo, int hi, std::int64_t want,
                         const std::vector<int>& years, std::vector<int>& chosen,
                         Rng& rng) {
  if (want <= 0) return 0;
  if (lo > hi) return want;
  const std::int64_t total = pool.count(lo, hi);
  std::int64_t chosen_in = 0;
  for (int c : chosen) {
    const int y = years[static_cast<std::size_t>(c)];
    if (y >= lo && y <= hi) chosen_in++;
  }
  const std::int64_t available = total - chosen_in;
  const std::int64_t take = std::min(want, available);
  auto is_chosen = [&](int cand) {
    return std::find(chosen.begin(), chosen.end(), cand) != chosen.end();
  };
  if (take * 2 >= available) {
    std::vector<int> cands;
    cands.reserve(static_cast<std::size_t>(available));
    for (int y = lo; y <= hi; ++y)
      for (int cand : pool.members[static_cast<std::size_t>(y)])
        if (!is_chosen(cand)) cands.push_back(cand);
    for (std::int64_t i = 0; i < take; ++i) {
      const auto j = i + static_cast<std::int64_t>(
                             rng.next_below(static_cast<std::uint64_t>(
                                 static_cast<std::int64_t>(cands.size()) - i)));
      std::swap(cands[static_cast<std::size_t>(i)], cands[static_cast<std::size_t>(j)]);
      chosen.push_back(cands[static_cast<std::size_t>(i)]);
    }
  } else {
    for (std::int64_t i = 0; i < take;) {
      const auto offset = static_cast<std::int64_t>(
          rng.next_below(static_cast<std::uint64_t>(total)));
      const int cand = pool.at(lo, offset);
      if (is_chosen(cand)) continue;
      chosen.push_back(cand);
      ++i;
    }
  }
  return want - take;
}

}  // namespace

CitationNetwork wire_citations(const std::vector<int>& assigned_years,
                               const std::vector<std::int64_t>& citation_counts,
                               const GenerationConfig& cfg, Rng& rng,
                               std::int64_t* dropped) {
  const int n = static_cast<int>(assigned_years.size());
  const int horizon = cfg.horizon;

  YearPool pool;
  pool.members.assign(static_cast<std::size_t>(horizon) + 1, {});
  for (int r = 0; r < n; ++r)
    pool.members[static_cast<std::size_t>(assigned_years[static_cast<std::size_t>(r)])]
        .push_back(r);
  pool.prefix.assign(static_cast<std::size_t>(horizon) + 1, 0);
  for (int t = 1; t <= horizon; ++t)
    pool.prefix[static_cast<std::size_t>(t)] =
        pool.prefix[static_cast<std::size_t>(t - 1)] +
        static_cast<std::int64_t>(pool.members[static_cast<std::size_t>(t)].size());

  std::int64_t drop_count = 0;
  std::vector<PatentRecord> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  std::vector<CitationEdge> edges;
  std::vector<int> chosen;
  for (int r = 0; r < n; ++r) {
    const int t = assigned_years[static_cast<std::size_t>(r)];
    nodes.push_back({rank_id(r + 1), t, DomainTag::None});
    const std::int64_t f = citation_counts[static_cast<std::size_t>(r)];
    if (f <= 0) continue;
    const PeriodQuotas q = period_quotas(f, cfg);
    chosen.clear();
    std::int64_t unmet = 0;
    unmet += draw_window(pool, t + 1, std::min(t + cfg.p1_len, horizon), q.q1,
                         assigned_years, chosen, rng);
    unmet += draw_window(pool, t + 1, std::min(t + cfg.p2_len, horizon), q.q2,
                         assigned_years, chosen, rng);
    unmet += draw_window(pool, t + 1, horizon, q.q3, assigned_years, chosen, rng);
    drop_count += unmet;
    for (int citer : chosen)
      edges.push_back({nodes.back().id, rank_id(citer + 1)});
  }
  if (dropped) *dropped = drop_count;
  return CitationNetwork::build(std::move(nodes), std::move(edges),
                                CitationNetwork::BuildMode::Strict);
}

std::pair<CitationNetwork, GenerationTrace> generate(const GenerationConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  GenerationTrace trace;
  auto yearly = yearly_counts(cfg, rng);
  trace.citation_counts = citation_counts(cfg, rng);
  trace.assigned_years = assign_years(trace.citation_counts, yearly, cfg, rng);
  trace.yearly_counts.assign(static_cast<std::size_t>(cfg.horizon) + 1, 0);
  for (int t = 1; t <= cfg.horizon; ++t)
    trace.yearly_counts[static_cast<std::size_t>(t)] =
        yearly[static_cast<std::size_t>(t - 1)];
  auto net = wire_citations(trace.assigned_years, trace.citation_counts, cfg, rng,
                            &trace.dropped_citations);
  return {std::move(net), std::move(trace)};
}

std::string rank_id(int rank) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "p%07d", rank);
  return buf;
}

}  // namespace citnet::netgen
