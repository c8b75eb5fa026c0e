#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "citnet/analysis.hpp"
#include "citnet/convergence.hpp"
#include "citnet/metrics.hpp"
#include "citnet/netgen.hpp"
#include "test_support.hpp"

using namespace citnet;

namespace {

CitationNetwork gen(int n, std::uint64_t seed) {
  netgen::GenerationConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return netgen::generate(cfg).first;
}

bool is_cross_domain(const CitationNetwork& net, int u, int v) {
  const auto tu = net.node(u).domain_tag;
  const auto tv = net.node(v).domain_tag;
  return (tu == DomainTag::A && tv == DomainTag::B) ||
         (tu == DomainTag::B && tv == DomainTag::A);
}

}  // namespace

TEST_CASE("ramp percentage interpolates linearly over the window") {
  convergence::ConvergenceConfig cfg;  // disc 15, gap 2, 5% -> 50%
  CHECK(convergence::ramp_k(16, cfg, 30) == doctest::Approx(0.0));
  CHECK(convergence::ramp_k(17, cfg, 30) == doctest::Approx(5.0));
  CHECK(convergence::ramp_k(30, cfg, 30) == doctest::Approx(50.0));
  CHECK(convergence::ramp_k(31, cfg, 30) == doctest::Approx(0.0));
  // Linear midpoint of 17..30 straddles 23/24; both bracket 27.5.
  CHECK(convergence::ramp_k(23, cfg, 30) == doctest::Approx(5.0 + 45.0 * 6 / 13));
  for (int y = 17; y < 30; ++y)
    CHECK(convergence::ramp_k(y, cfg, 30) <=
          convergence::ramp_k(y + 1, cfg, 30));
}

TEST_CASE("zero-ramp zero-boost fusion is a disjoint union plus the bridge") {
  auto a = gen(150, 1);
  auto b = gen(150, 2);
  convergence::ConvergenceConfig cfg;
  cfg.ramp_start_k = 0.0;
  cfg.ramp_end_k = 0.0;
  cfg.disc_forward_boost = 0;
  cfg.seed = 3;
  auto combined = convergence::combine(a, b, cfg);
  const auto& net = combined.network;

  CHECK(net.node_count() == 301);
  CHECK(net.edge_count() == a.edge_count() + b.edge_count() + 6);
  CHECK(combined.rewire_log.empty());

  const int d = *net.index_of("D");
  CHECK(net.node(d).year == 15);
  CHECK(net.node(d).domain_tag == DomainTag::Merged);
  CHECK(net.bwdcit(d) == 6);
  CHECK(net.fwdcit(d) == 0);
  int from_a = 0, from_b = 0;
  for (int u : net.backward(d)) {
    CHECK(net.node(u).year < 15);
    if (net.node(u).domain_tag == DomainTag::A) from_a++;
    if (net.node(u).domain_tag == DomainTag::B) from_b++;
  }
  CHECK(from_a == 3);
  CHECK(from_b == 3);

  // No A<->B edge anywhere.
  for (int v = 0; v < net.node_count(); ++v)
    for (int w : net.forward(v)) CHECK(!is_cross_domain(net, v, w));
}

TEST_CASE("domain relabeling uses odd and even numeric ids") {
  auto a = gen(40, 4);
  auto b = gen(40, 5);
  convergence::ConvergenceConfig cfg;
  cfg.seed = 6;
  auto combined = convergence::combine(a, b, cfg);
  int odd = 0, even = 0;
  for (const auto& rec : combined.network.nodes()) {
    if (rec.id == "D") continue;
    const int last = rec.id.back() - '0';
    if (last % 2 == 1) {
      CHECK(rec.domain_tag == DomainTag::A);
      odd++;
    } else {
      CHECK(rec.domain_tag == DomainTag::B);
      even++;
    }
  }
  CHECK(odd == 40);
  CHECK(even == 40);
}

TEST_CASE("cross-domain citation starts only after the lag gap") {
  auto a = gen(200, 7);
  auto b = gen(200, 8);
  convergence::ConvergenceConfig cfg;
  cfg.seed = 9;
  auto combined = convergence::combine(a, b, cfg);
  const auto& net = combined.network;
  const int start = cfg.disc_year + cfg.lag_gap;  // 17
  for (int v = 0; v < net.node_count(); ++v)
    for (int w : net.forward(v))
      if (is_cross_domain(net, v, w)) CHECK(net.node(w).year >= start);
  for (const auto& ev : combined.rewire_log) {
    CHECK(ev.year >= start);
    // Replacement preserves the cited patent's year exactly.
    const int orig = *net.index_of(ev.original_cited);
    const int repl = *net.index_of(ev.new_cited);
    CHECK(net.node(orig).year == net.node(repl).year);
  }
}

TEST_CASE("removing the bridge and rewired edges recovers two domains") {
  auto a = gen(150, 10);
  auto b = gen(150, 11);
  convergence::ConvergenceConfig cfg;
  cfg.seed = 12;
  auto combined = convergence::combine(a, b, cfg);
  const auto& net = combined.network;
  std::set<std::pair<std::string, std::string>> rewired;
  for (const auto& ev : combined.rewire_log)
    rewired.emplace(ev.new_cited, ev.original_citing);
  for (const auto& e : net.edge_list()) {
    if (e.cited == "D" || e.citing == "D") continue;
    const int u = *net.index_of(e.cited), v = *net.index_of(e.citing);
    if (is_cross_domain(net, u, v)) CHECK(rewired.count({e.cited, e.citing}));
  }
}

TEST_CASE("negative boost scales with the maximum realized citations") {
  auto a = gen(200, 13);
  auto b = gen(200, 14);
  std::int64_t max_f = 0;
  for (int v = 0; v < a.node_count(); ++v)
    max_f = std::max<std::int64_t>(max_f, a.fwdcit(v));
  for (int v = 0; v < b.node_count(); ++v)
    max_f = std::max<std::int64_t>(max_f, b.fwdcit(v));

  // -100 grants exactly the best patent's count.
  convergence::ConvergenceConfig cfg;
  cfg.disc_forward_boost = -100;
  cfg.seed = 15;
  auto combined = convergence::combine(a, b, cfg);
  const int d = *combined.network.index_of("D");
  CHECK(combined.network.fwdcit(d) ==
        static_cast<int>(max_f - combined.dropped_boost));
  for (int w : combined.network.forward(d))
    CHECK(combined.network.node(w).year > cfg.disc_year);

  // The default grants 275% of it, rounded to the nearest count.
  convergence::ConvergenceConfig def;
  def.seed = 15;
  auto boosted = convergence::combine(a, b, def);
  const int d2 = *boosted.network.index_of("D");
  CHECK(boosted.network.fwdcit(d2) ==
        static_cast<int>((275 * max_f + 50) / 100 - boosted.dropped_boost));
}

TEST_CASE("fusion is deterministic per seed") {
  auto a = gen(120, 16);
  auto b = gen(120, 17);
  convergence::ConvergenceConfig cfg;
  cfg.seed = 18;
  auto c1 = convergence::combine(a, b, cfg);
  auto c2 = convergence::combine(a, b, cfg);
  CHECK(c1.network.edge_count() == c2.network.edge_count());
  const auto e1 = c1.network.edge_list();
  const auto e2 = c2.network.edge_list();
  for (std::size_t i = 0; i < e1.size(); ++i) {
    CHECK(e1[i].cited == e2[i].cited);
    CHECK(e1[i].citing == e2[i].citing);
  }
  CHECK(c1.rewire_log.size() == c2.rewire_log.size());
}

TEST_CASE("cross-domain volume grows over the ramp window") {
  // Averaged over replications, later ramp years see more rewiring than the
  // first ramp years.
  int early = 0, late = 0;
  for (int rep = 0; rep < 10; ++rep) {
    auto a = gen(150, 100 + static_cast<std::uint64_t>(rep));
    auto b = gen(150, 200 + static_cast<std::uint64_t>(rep));
    convergence::ConvergenceConfig cfg;
    cfg.seed = 300 + static_cast<std::uint64_t>(rep);
    auto combined = convergence::combine(a, b, cfg);
    for (const auto& ev : combined.rewire_log) {
      if (ev.year <= 23) early++;
      else late++;
    }
  }
  CHECK(late > early);
}

TEST_CASE("configuration validation") {
  convergence::ConvergenceConfig cfg;
  cfg.disc_year = 29;
  CHECK_THROWS_WITH_AS(cfg.validate(30), doctest::Contains("disc_year"),
                       std::invalid_argument);
  cfg = convergence::ConvergenceConfig{};
  cfg.ramp_end_k = 120.0;
  CHECK_THROWS_WITH_AS(cfg.validate(30), doctest::Contains("ramp_end_k"),
                       std::invalid_argument);
  cfg = convergence::ConvergenceConfig{};
  cfg.ramp_start_k = 60.0;
  cfg.ramp_end_k = 50.0;
  CHECK_THROWS_AS(cfg.validate(30), std::invalid_argument);

  nlohmann::json j = {{"disc_year", 15}, {"mystery", 1}};
  CHECK_THROWS_WITH_AS(convergence::ConvergenceConfig::from_json(j),
                       doctest::Contains("mystery"), std::invalid_argument);
  nlohmann::json null_boost = {{"disc_forward_boost", nullptr}};
  CHECK(convergence::ConvergenceConfig::from_json(null_boost)
            .disc_forward_boost ==
        convergence::ConvergenceConfig{}.disc_forward_boost);
}

TEST_CASE("fusion requires pre-bridge patents in both domains") {
  // All patents of one source at years >= disc_year.
  std::vector<std::pair<std::string, int>> nodes;
  for (int i = 0; i < 20; ++i) {
    char id[8];
    std::snprintf(id, sizeof(id), "n%03d", i);
    nodes.emplace_back(id, 20 + i % 11);
  }
  auto late = test_support::make_net(nodes, {});
  auto normal = gen(50, 19);
  // Align horizons.
  convergence::ConvergenceConfig cfg;
  cfg.seed = 20;
  CHECK_THROWS_AS(convergence::combine(normal, late, cfg),
                  std::invalid_argument);
}

TEST_CASE("mismatched horizons are rejected") {
  auto a = gen(50, 21);
  netgen::GenerationConfig short_cfg;
  short_cfg.n = 50;
  short_cfg.horizon = 20;
  short_cfg.p2_len = 10;
  short_cfg.seed = 22;
  auto b = netgen::generate(short_cfg).first;
  if (a.max_year() != b.max_year()) {
    convergence::ConvergenceConfig cfg;
    CHECK_THROWS_AS(convergence::combine(a, b, cfg), std::invalid_argument);
  }
}

TEST_CASE("boost improves the bridge's persistence rank on paired seeds") {
  int improved = 0, total = 0;
  for (int rep = 0; rep < 10; ++rep) {
    auto a = gen(150, 400 + static_cast<std::uint64_t>(rep));
    auto b = gen(150, 500 + static_cast<std::uint64_t>(rep));
    convergence::ConvergenceConfig boosted;
    boosted.seed = 600 + static_cast<std::uint64_t>(rep);
    convergence::ConvergenceConfig flat = boosted;
    flat.disc_forward_boost = 0;

    auto rank_d = [](const convergence::CombinedNetwork& c) {
      auto result = analysis::analyze(c.network, 0.5);
      return metrics::rank_of(result.report, 2, *c.network.index_of("D"));
    };
    const auto rb = rank_d(convergence::combine(a, b, boosted));
    const auto rf = rank_d(convergence::combine(a, b, flat));
    total++;
    if (rb <= rf) improved++;
  }
  CHECK(improved >= total * 8 / 10);
}
