#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "citnet/analysis.hpp"
#include "citnet/metrics.hpp"
#include "citnet/netgen.hpp"
#include "test_support.hpp"

using namespace citnet;
using test_support::make_net;

namespace {

// A star network: `hub` cited by `spokes` later patents, so FWDCIT(hub) is
// exact; persistence and main-path inputs are then overridden per test.
struct Fixture {
  CitationNetwork net;
  persistence::PersistenceTable table;
  mainpath::MainPathGraph mpg;

  explicit Fixture(int spokes) : net(build(spokes)) {
    const auto n = static_cast<std::size_t>(net.node_count());
    table.raw.assign(n, 0.0);
    table.normalized.assign(n, 0.0);
    table.is_hpp.assign(n, 0);
    mpg.on_path.assign(n, 0);
    mpg.path_count.assign(n, 0);
    mpg.mp_gap.assign(n, 0.0);
    mpg.has_mp.assign(n, 0);
  }

  int hub() const { return *net.index_of("hub"); }

  static CitationNetwork build(int spokes) {
    std::vector<std::pair<std::string, int>> nodes{{"hub", 1}};
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < spokes; ++i) {
      char id[8];
      std::snprintf(id, sizeof(id), "s%04d", i);
      nodes.emplace_back(id, 2);
      edges.emplace_back("hub", id);
    }
    return make_net(nodes, edges);
  }
};

}  // namespace

TEST_CASE("metric formulas reproduce the reference values") {
  Fixture f(196);
  const auto hub = static_cast<std::size_t>(f.hub());
  f.table.raw[hub] = 164.25;
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  const auto& row = report.rows[hub];
  CHECK(row.fwdcit == 196);
  CHECK(row.m1 == doctest::Approx(196.0));
  CHECK(row.m2 == doctest::Approx(164.25));
  CHECK(row.m3 == doctest::Approx(32192.88).epsilon(0.005));
}

TEST_CASE("persistence-gap metric") {
  Fixture f(1);
  const auto hub = static_cast<std::size_t>(f.hub());
  f.table.is_hpp[hub] = 1;
  f.table.hpp.push_back(f.hub());
  f.mpg.has_mp[hub] = 1;

  f.mpg.mp_gap[hub] = 0.488;
  auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(report.rows[hub].has_m4);
  CHECK(report.rows[hub].m4 == doctest::Approx(1.05).epsilon(0.01));

  f.mpg.mp_gap[hub] = 0.5;
  report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(report.rows[hub].m4 == doctest::Approx(1.0));

  f.mpg.has_mp[hub] = 0;
  report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(!report.rows[hub].has_m4);  // no HPP ancestor: metric absent
}

TEST_CASE("path-weighted persistence metric") {
  Fixture f(1);
  const auto hub = static_cast<std::size_t>(f.hub());
  f.table.raw[hub] = 5.0;
  f.mpg.on_path[hub] = 1;
  f.mpg.path_count[hub] = 1;
  auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(report.rows[hub].m5 == doctest::Approx(2.5));  // 1/(1+0+1) * 5

  // m5 / P = PATH / (1 + BWDCIT + PATH) exactly for PATH in {1, 2, 3}.
  for (int path = 1; path <= 3; ++path) {
    f.mpg.path_count[hub] = path;
    report = metrics::compute_metrics(f.net, f.table, f.mpg);
    CHECK(report.rows[hub].m5 / report.rows[hub].m2 ==
          doctest::Approx(static_cast<double>(path) / (1.0 + 0.0 + path)));
  }

  f.mpg.on_path[hub] = 0;
  f.mpg.path_count[hub] = 0;
  report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(report.rows[hub].m5 == doctest::Approx(0.0));  // off-path
}

TEST_CASE("ranking ties break by persistence, citations, then id") {
  Fixture f(3);
  // Three spokes with equal m1 = 0; persistence tiebreak 2, 3, 1.
  f.table.raw[static_cast<std::size_t>(*f.net.index_of("s0000"))] = 2.0;
  f.table.raw[static_cast<std::size_t>(*f.net.index_of("s0001"))] = 3.0;
  f.table.raw[static_cast<std::size_t>(*f.net.index_of("s0002"))] = 1.0;
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  const auto order = metrics::rank_all(report, 1);
  REQUIRE(order.size() == 4);
  CHECK(order[0].node == f.hub());  // only node with citations
  CHECK(report.rows[static_cast<std::size_t>(order[1].node)].id == "s0001");
  CHECK(report.rows[static_cast<std::size_t>(order[2].node)].id == "s0000");
  CHECK(report.rows[static_cast<std::size_t>(order[3].node)].id == "s0002");
}

TEST_CASE("all-equal values fall back to ascending id") {
  Fixture f(3);
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  const auto order = metrics::rank_all(report, 2);  // all zero
  REQUIRE(order.size() == 4);
  CHECK(report.rows[static_cast<std::size_t>(order[0].node)].id == "hub");
  CHECK(report.rows[static_cast<std::size_t>(order[1].node)].id == "s0000");
}

TEST_CASE("rank truncates to k and tolerates oversized k") {
  Fixture f(5);
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  CHECK(metrics::rank(report, 1, 2).size() == 2);
  CHECK(metrics::rank(report, 1, 100).size() == 6);
  CHECK_THROWS_AS(metrics::rank_all(report, 6), std::invalid_argument);
  CHECK_THROWS_AS(metrics::rank_all(report, 0), std::invalid_argument);
}

TEST_CASE("absent persistence-gap values rank below every present value") {
  Fixture f(2);
  const auto a = static_cast<std::size_t>(*f.net.index_of("s0000"));
  f.table.is_hpp[a] = 1;
  f.mpg.has_mp[a] = 1;
  f.mpg.mp_gap[a] = 1.0;  // m4 = 0, present
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  const auto order = metrics::rank_all(report, 4);
  CHECK(order[0].node == static_cast<int>(a));
  CHECK(order[0].has_value);
  CHECK(!order[1].has_value);
  CHECK(metrics::rank_of(report, 4, static_cast<int>(a)) == 1);
}

TEST_CASE("normalized ranking value is value over max") {
  Fixture f(4);
  f.table.raw[static_cast<std::size_t>(f.hub())] = 8.0;
  f.table.raw[static_cast<std::size_t>(*f.net.index_of("s0000"))] = 2.0;
  const auto report = metrics::compute_metrics(f.net, f.table, f.mpg);
  const auto order = metrics::rank_all(report, 2);
  CHECK(order[0].normalized == doctest::Approx(1.0));
  CHECK(order[1].normalized == doctest::Approx(0.25));
}

TEST_CASE("scaling persistence preserves dependent rankings") {
  netgen::GenerationConfig cfg;
  cfg.n = 200;
  cfg.seed = 77;
  auto [net, trace] = netgen::generate(cfg);
  auto result = analysis::analyze(net, 0.5);

  auto scaled_table = result.table;
  for (auto& v : scaled_table.raw) v *= 3.5;
  const auto scaled =
      metrics::compute_metrics(net, scaled_table, result.mpg);
  for (int metric : {2, 3, 5}) {
    const auto base_order = metrics::rank_all(result.report, metric);
    const auto scaled_order = metrics::rank_all(scaled, metric);
    for (std::size_t i = 0; i < base_order.size(); ++i)
      CHECK(base_order[i].node == scaled_order[i].node);
  }
}

TEST_CASE("derived metric bounds hold on generated networks") {
  netgen::GenerationConfig cfg;
  cfg.n = 300;
  cfg.seed = 78;
  auto [net, trace] = netgen::generate(cfg);
  auto result = analysis::analyze(net, 0.5);
  for (const auto& row : result.report.rows) {
    CHECK(row.m5 <= row.p + 1e-12);
    if (row.has_m4) CHECK(row.m4 >= 0.0);
    if (row.path == 0) CHECK(row.m5 == 0.0);
  }
}
