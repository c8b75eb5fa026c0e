#include "citnet/convergence.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "citnet/netgen.hpp"
#include "citnet/persistence.hpp"
#include "citnet/rng.hpp"

namespace citnet::convergence {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("invalid config field `") +
                                       field + "`: " + what);
}

std::string numeric_id(std::int64_t value) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%07lld", static_cast<long long>(value));
  return buf;
}

// Top pre-disc_year patents by raw persistence computed on the induced
// pre-disc_year subnetwork of one source domain.
std::vector<std::string> top_persistence_before(const CitationNetwork& net,
                                                int disc_year, int count) {
  std::vector<PatentRecord> nodes;
  for (const auto& rec : net.nodes())
    if (rec.year < disc_year) nodes.push_back(rec);
  if (nodes.empty())
    throw std::invalid_argument(
        "combine: a source domain has no patents before disc_year");
  std::vector<CitationEdge> edges;
  for (const auto& e : net.edge_list()) {
    const int citing_year = net.node(*net.index_of(e.citing)).year;
    if (citing_year < disc_year) edges.push_back(e);
  }
  auto sub = CitationNetwork::build(std::move(nodes), std::move(edges),
                                    CitationNetwork::BuildMode::Strict);
  auto raw = persistence::persistence_scores(sub);
  std::vector<int> order(static_cast<std::size_t>(sub.node_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (raw[static_cast<std::size_t>(a)] != raw[static_cast<std::size_t>(b)])
      return raw[static_cast<std::size_t>(a)] > raw[static_cast<std::size_t>(b)];
    return sub.node(a).id < sub.node(b).id;
  });
  std::vector<std::string> top;
  for (int v : order) {
    if (static_cast<int>(top.size()) >= count) break;
    top.push_back(sub.node(v).id);
  }
  return top;
}

}  // namespace

void ConvergenceConfig::validate(int horizon) const {
  require(disc_year >= 1, "disc_year", "must be >= 1");
  require(disc_year + lag_gap < horizon, "disc_year",
          "disc_year + lag_gap must be below horizon");
  require(lag_gap >= 0, "lag_gap", "must be >= 0");
  require(disc_backward_split >= 1, "disc_backward_split", "must be >= 1");
  require(ramp_start_k >= 0.0, "ramp_start_k", "must be >= 0");
  require(ramp_start_k <= ramp_end_k, "ramp_end_k",
          "must be >= ramp_start_k");
  require(ramp_end_k <= 100.0, "ramp_end_k", "must be <= 100");
  require(lag_frac_p1 >= 0.0 && lag_frac_p1 + lag_frac_p2 <= 1.0,
          "lag_frac_p1", "fractions must be >= 0 and sum to <= 1");
  require(p1_len >= 1 && p1_len < p2_len, "p1_len",
          "need 1 <= p1_len < p2_len");
}

ConvergenceConfig ConvergenceConfig::from_json(const nlohmann::json& j) {
  static const char* known[] = {"disc_year",   "disc_backward_split",
                                "disc_forward_boost", "lag_gap",
                                "ramp_start_k", "ramp_end_k",
                                "lag_frac_p1", "lag_frac_p2",
                                "p1_len",      "p2_len",
                                "seed"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known))
      throw std::invalid_argument("unknown config field `" + it.key() + "`");
  }
  ConvergenceConfig cfg;
  auto get = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    try {
      out = j.at(key).get<std::remove_reference_t<decltype(out)>>();
    } catch (const nlohmann::json::exception&) {
      throw std::invalid_argument(std::string("invalid config field `") + key +
                                  "`: wrong type");
    }
  };
  get("disc_year", cfg.disc_year);
  get("disc_backward_split", cfg.disc_backward_split);
  if (j.contains("disc_forward_boost") && !j.at("disc_forward_boost").is_null())
    get("disc_forward_boost", cfg.disc_forward_boost);
  get("lag_gap", cfg.lag_gap);
  get("ramp_start_k", cfg.ramp_start_k);
  get("ramp_end_k", cfg.ramp_end_k);
  get("lag_frac_p1", cfg.lag_frac_p1);
  get("lag_frac_p2", cfg.lag_frac_p2);
  get("p1_len", cfg.p1_len);
  get("p2_len", cfg.p2_len);
  get("seed", cfg.seed);
  return cfg;
}

nlohmann::json ConvergenceConfig::to_json() const {
  return {{"disc_year", disc_year},
          {"disc_backward_split", disc_backward_split},
          {"disc_forward_boost", disc_forward_boost},
          {"lag_gap", lag_gap},
          {"ramp_start_k", ramp_start_k},
          {"ramp_end_k", ramp_end_k},
          {"lag_frac_p1", lag_frac_p1},
          {"lag_frac_p2", lag_frac_p2},
          {"p1_len", p1_len},
          {"p2_len", p2_len},
          {"seed", seed}};
}

double ramp_k(int year, const ConvergenceConfig& cfg, int horizon) {
  const int start = cfg.disc_year + cfg.lag_gap;
  if (year < start || year > horizon) return 0.0;
  if (horizon == start) return cfg.ramp_end_k;
  return cfg.ramp_start_k + (cfg.ramp_end_k - cfg.ramp_start_k) *
                                static_cast<double>(year - start) /
                                static_cast<double>(horizon - start);
}

CombinedNetwork combine(const CitationNetwork& a, const CitationNetwork& b,
                        const ConvergenceConfig& cfg) {
  if (a.max_year() != b.max_year())
    throw std::invalid_argument("combine: source networks must share a horizon");
  const int horizon = a.max_year();
  cfg.validate(horizon);
  Rng rng(cfg.seed);

  // Odd ids for domain A, even for domain B, in source id order.
  struct Node {
    std::string id;
    int year;
    DomainTag tag;
  };
  std::vector<Node> all;
  all.reserve(static_cast<std::size_t>(a.node_count() + b.node_count()) + 1);
  std::vector<std::string> map_a(static_cast<std::size_t>(a.node_count()));
  std::vector<std::string> map_b(static_cast<std::size_t>(b.node_count()));
  for (int v = 0; v < a.node_count(); ++v) {
    map_a[static_cast<std::size_t>(v)] = numeric_id(2LL * v + 1);
    all.push_back({map_a[static_cast<std::size_t>(v)], a.node(v).year, DomainTag::A});
  }
  for (int v = 0; v < b.node_count(); ++v) {
    map_b[static_cast<std::size_t>(v)] = numeric_id(2LL * v + 2);
    all.push_back({map_b[static_cast<std::size_t>(v)], b.node(v).year, DomainTag::B});
  }
  std::sort(all.begin(), all.end(),
            [](const Node& x, const Node& y) { return x.id < y.id; });
  const int base_count = static_cast<int>(all.size());
  auto find_node = [&](const std::string& id) {
    auto it = std::lower_bound(
        all.begin(), all.end(), id,
        [](const Node& n, const std::string& key) { return n.id < key; });
    return static_cast<int>(it - all.begin());
  };

  // Backward adjacency in combined index space, mutable for the ramp.
  std::vector<std::vector<int>> cited_by(static_cast<std::size_t>(base_count));
  auto add_edges = [&](const CitationNetwork& net,
                       const std::vector<std::string>& map) {
    for (const auto& e : net.edge_list()) {
      const int u = find_node(map[static_cast<std::size_t>(*net.index_of(e.cited))]);
      const int v = find_node(map[static_cast<std::size_t>(*net.index_of(e.citing))]);
      cited_by[static_cast<std::size_t>(v)].push_back(u);
    }
  };
  add_edges(a, map_a);
  add_edges(b, map_b);
  for (auto& adj : cited_by) std::sort(adj.begin(), adj.end());

  CombinedNetwork out;
  out.discontinuity_id = discontinuity_id();

  // D's backward citations: the strongest pre-disc_year knowledge stream of
  // each domain.
  std::vector<int> d_cites;
  auto collect_streams = [&](const CitationNetwork& net,
                             const std::vector<std::string>& map) {
    for (const auto& id : top_persistence_before(net, cfg.disc_year,
                                                 cfg.disc_backward_split))
      d_cites.push_back(find_node(map[static_cast<std::size_t>(*net.index_of(id))]));
  };
  collect_streams(a, map_a);
  collect_streams(b, map_b);
  std::sort(d_cites.begin(), d_cites.end());

  // D's forward-citation boost, wired with the standard period quotas over
  // candidates from both domains.
  std::int64_t boost = cfg.disc_forward_boost;
  if (boost < 0) {
    // Negative values scale with the best realized citation count so the
    // boost tracks the network size: -100 grants D exactly the top patent's
    // count, -250 grants 2.5 times it.
    std::int64_t max_f = 0;
    for (int v = 0; v < a.node_count(); ++v)
      max_f = std::max<std::int64_t>(max_f, a.fwdcit(v));
    for (int v = 0; v < b.node_count(); ++v)
      max_f = std::max<std::int64_t>(max_f, b.fwdcit(v));
    boost = (-boost * max_f + 50) / 100;
  }
  std::vector<std::vector<int>> by_year(static_cast<std::size_t>(horizon) + 1);
  for (int v = 0; v < base_count; ++v)
    by_year[static_cast<std::size_t>(all[static_cast<std::size_t>(v)].year)]
        .push_back(v);  // index order == id order

  std::vector<int> d_citers;
  {
    netgen::GenerationConfig quota_cfg;
    quota_cfg.lag_frac_p1 = cfg.lag_frac_p1;
    quota_cfg.lag_frac_p2 = cfg.lag_frac_p2;
    const auto q = netgen::period_quotas(boost, quota_cfg);
    const int t = cfg.disc_year;
    auto draw = [&](int lo, int hi, std::int64_t want) {
      if (want <= 0) return std::int64_t{0};
      hi = std::min(hi, horizon);
      std::vector<int> cands;
      for (int y = lo; y <= hi && y <= horizon; ++y)
        for (int v : by_year[static_cast<std::size_t>(y)])
          if (std::find(d_citers.begin(), d_citers.end(), v) == d_citers.end())
            cands.push_back(v);
      const auto take = std::min<std::int64_t>(want,
                                               static_cast<std::int64_t>(cands.size()));
      for (std::int64_t i = 0; i < take; ++i) {
        const auto j = i + static_cast<std::int64_t>(rng.next_below(
                               static_cast<std::uint64_t>(
                                   static_cast<std::int64_t>(cands.size()) - i)));
        std::swap(cands[static_cast<std::size_t>(i)],
                  cands[static_cast<std::size_t>(j)]);
        d_citers.push_back(cands[static_cast<std::size_t>(i)]);
      }
      return want - take;
    };
    std::int64_t unmet = 0;
    unmet += draw(t + 1, t + cfg.p1_len, q.q1);
    unmet += draw(t + 1, t + cfg.p2_len, q.q2);
    unmet += draw(t + 1, horizon, q.q3);
    out.dropped_boost = unmet;
  }

  // Cross-domain ramp: from disc_year + lag_gap on, each within-domain
  // backward citation flips, with probability k(year)/100, to a uniformly
  // chosen same-year patent of the opposite domain.
  std::vector<std::vector<int>> by_year_tag[2];
  by_year_tag[0].assign(static_cast<std::size_t>(horizon) + 1, {});
  by_year_tag[1].assign(static_cast<std::size_t>(horizon) + 1, {});
  for (int v = 0; v < base_count; ++v) {
    const auto& node = all[static_cast<std::size_t>(v)];
    by_year_tag[node.tag == DomainTag::A ? 0 : 1]
               [static_cast<std::size_t>(node.year)].push_back(v);
  }
  for (int y = cfg.disc_year + cfg.lag_gap; y <= horizon; ++y) {
    const double k = ramp_k(y, cfg, horizon) / 100.0;
    if (k <= 0.0) continue;
    for (int v : by_year[static_cast<std::size_t>(y)]) {
      const DomainTag vtag = all[static_cast<std::size_t>(v)].tag;
      auto& cited = cited_by[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < cited.size(); ++i) {
        const int u = cited[i];
        if (all[static_cast<std::size_t>(u)].tag != vtag) continue;
        if (rng.next_double() >= k) continue;
        const auto& pool =
            by_year_tag[vtag == DomainTag::A ? 1 : 0]
                       [static_cast<std::size_t>(all[static_cast<std::size_t>(u)].year)];
        if (pool.empty()) {
          out.skipped_replacements++;
          continue;
        }
        const int cand = pool[rng.next_below(pool.size())];
        if (std::find(cited.begin(), cited.end(), cand) != cited.end()) {
          out.skipped_replacements++;  // would duplicate an existing edge
          continue;
        }
        out.rewire_log.push_back({all[static_cast<std::size_t>(u)].id,
                                  all[static_cast<std::size_t>(v)].id,
                                  all[static_cast<std::size_t>(cand)].id, y});
        cited[i] = cand;
      }
    }
  }

  std::vector<PatentRecord> records;
  records.reserve(static_cast<std::size_t>(base_count) + 1);
  for (const auto& node : all)
    records.push_back({node.id, node.year, node.tag});
  records.push_back({discontinuity_id(), cfg.disc_year, DomainTag::Merged});

  std::vector<CitationEdge> edges;
  for (int v = 0; v < base_count; ++v)
    for (int u : cited_by[static_cast<std::size_t>(v)])
      edges.push_back({all[static_cast<std::size_t>(u)].id,
                       all[static_cast<std::size_t>(v)].id});
  for (int u : d_cites)
    edges.push_back({all[static_cast<std::size_t>(u)].id, discontinuity_id()});
  for (int w : d_citers)
    edges.push_back({discontinuity_id(), all[static_cast<std::size_t>(w)].id});

  out.network = CitationNetwork::build(std::move(records), std::move(edges),
                                       CitationNetwork::BuildMode::Strict);
  return out;
}

}  // namespace citnet::convergence
