#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "citnet/mainpath.hpp"
#include "citnet/persistence.hpp"
#include "test_support.hpp"

using namespace citnet;
using test_support::make_net;

namespace {

// Fabricated table: normalized persistence by id, HPPs at np >= tau.
persistence::PersistenceTable make_table(
    const CitationNetwork& net, const std::map<std::string, double>& np,
    double tau = 0.5) {
  persistence::PersistenceTable table;
  table.tau = tau;
  const auto n = static_cast<std::size_t>(net.node_count());
  table.raw.assign(n, 0.0);
  table.normalized.assign(n, 0.0);
  table.is_hpp.assign(n, 0);
  for (const auto& [id, value] : np) {
    const auto v = static_cast<std::size_t>(*net.index_of(id));
    table.raw[v] = value;
    table.normalized[v] = value;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (table.normalized[static_cast<std::size_t>(v)] >= tau) {
      table.is_hpp[static_cast<std::size_t>(v)] = 1;
      table.hpp.push_back(v);
    }
  }
  return table;
}

const mainpath::Segment* find_segment(const mainpath::MainPathGraph& mpg,
                                      int from, int to) {
  for (const auto& seg : mpg.segments)
    if (seg.nodes.size() >= 2 && seg.nodes.front() == from &&
        seg.nodes.back() == to)
      return &seg;
  return nullptr;
}

// All a -> h citation paths with non-HPP interiors; returns the best
// achievable interior minimum (1.0 when a direct edge exists).
double brute_force_bottleneck(const CitationNetwork& net,
                              const persistence::PersistenceTable& table,
                              int a, int h, std::vector<int>& path,
                              bool& found) {
  const int v = path.back();
  double best = -1.0;
  for (int w : net.forward(v)) {
    if (w == h) {
      double interior_min = 1.0;
      for (std::size_t i = 1; i < path.size(); ++i)
        interior_min = std::min(
            interior_min, table.normalized[static_cast<std::size_t>(path[i])]);
      found = true;
      best = std::max(best, interior_min);
      continue;
    }
    if (table.is_hpp[static_cast<std::size_t>(w)]) continue;
    path.push_back(w);
    best = std::max(best, brute_force_bottleneck(net, table, a, h, path, found));
    path.pop_back();
  }
  return best;
}

}  // namespace

TEST_CASE("single forced route") {
  auto net = make_net({{"a", 1}, {"x", 2}, {"h", 3}},
                      {{"a", "x"}, {"x", "h"}});
  auto table = make_table(net, {{"a", 1.0}, {"x", 0.3}, {"h", 1.0}});
  auto mpg = mainpath::build_segments(net, table);
  const auto* seg = find_segment(mpg, *net.index_of("a"), *net.index_of("h"));
  REQUIRE(seg != nullptr);
  CHECK(seg->nodes.size() == 3);
  double mp = 0.0;
  REQUIRE(mainpath::min_persistence_gap(mpg, table, *net.index_of("h"), &mp));
  CHECK(mp == doctest::Approx(0.3));
  const auto counts = mainpath::converging_path_counts(mpg);
  CHECK(counts[*net.index_of("a")] == 1);  // path start
  CHECK(counts[*net.index_of("x")] == 1);
  CHECK(counts[*net.index_of("h")] == 1);
}

TEST_CASE("direct HPP-to-HPP edge has MP 1") {
  auto net = make_net({{"a", 1}, {"h", 2}}, {{"a", "h"}});
  auto table = make_table(net, {{"a", 1.0}, {"h", 1.0}});
  auto mpg = mainpath::build_segments(net, table);
  double mp = 0.0;
  REQUIRE(mainpath::min_persistence_gap(mpg, table, *net.index_of("h"), &mp));
  CHECK(mp == doctest::Approx(1.0));
}

TEST_CASE("widest route wins over a weaker alternative") {
  auto net = make_net({{"a", 1}, {"x", 2}, {"y", 2}, {"h", 3}},
                      {{"a", "x"}, {"a", "y"}, {"x", "h"}, {"y", "h"}});
  auto table =
      make_table(net, {{"a", 1.0}, {"x", 0.3}, {"y", 0.6}, {"h", 1.0}}, 0.7);
  auto mpg = mainpath::build_segments(net, table);
  const auto* seg = find_segment(mpg, *net.index_of("a"), *net.index_of("h"));
  REQUIRE(seg != nullptr);
  REQUIRE(seg->nodes.size() == 3);
  CHECK(seg->nodes[1] == *net.index_of("y"));
  double mp = 0.0;
  REQUIRE(mainpath::min_persistence_gap(mpg, table, *net.index_of("h"), &mp));
  CHECK(mp == doctest::Approx(0.6));
}

TEST_CASE("bottleneck ties break by shorter then lexicographically smaller path") {
  // Two equal-bottleneck routes a->m->h and a->x->y->h: shorter wins.
  auto net = make_net({{"a", 1}, {"m", 2}, {"x", 2}, {"y", 3}, {"h", 4}},
                      {{"a", "m"}, {"m", "h"}, {"a", "x"}, {"x", "y"},
                       {"y", "h"}});
  auto table = make_table(
      net, {{"a", 1.0}, {"m", 0.4}, {"x", 0.4}, {"y", 0.4}, {"h", 1.0}});
  auto mpg = mainpath::build_segments(net, table);
  const auto* seg = find_segment(mpg, *net.index_of("a"), *net.index_of("h"));
  REQUIRE(seg != nullptr);
  REQUIRE(seg->nodes.size() == 3);
  CHECK(seg->nodes[1] == *net.index_of("m"));

  // Same length, same bottleneck: smaller id sequence wins ("b" over "c").
  auto net2 = make_net({{"a", 1}, {"b", 2}, {"c", 2}, {"h", 3}},
                       {{"a", "b"}, {"a", "c"}, {"b", "h"}, {"c", "h"}});
  auto table2 = make_table(net2, {{"a", 1.0}, {"b", 0.4}, {"c", 0.4}, {"h", 1.0}});
  auto mpg2 = mainpath::build_segments(net2, table2);
  const auto* seg2 = find_segment(mpg2, *net2.index_of("a"), *net2.index_of("h"));
  REQUIRE(seg2 != nullptr);
  REQUIRE(seg2->nodes.size() == 3);
  CHECK(seg2->nodes[1] == *net2.index_of("b"));
}

TEST_CASE("HPP without ancestors becomes a path start") {
  auto net = make_net({{"h", 1}, {"z", 2}}, {{"h", "z"}});
  auto table = make_table(net, {{"h", 1.0}, {"z", 0.1}});
  auto mpg = mainpath::build_segments(net, table);
  REQUIRE(mpg.segments.size() == 1);
  CHECK(mpg.segments[0].nodes == std::vector<int>{*net.index_of("h")});
  CHECK(mainpath::converging_path_counts(mpg)[*net.index_of("h")] == 1);
  CHECK(mpg.on_path[*net.index_of("z")] == 0);
  CHECK(mainpath::converging_path_counts(mpg)[*net.index_of("z")] == 0);
  double mp = 0.0;
  CHECK(!mainpath::min_persistence_gap(mpg, table, *net.index_of("h"), &mp));
}

TEST_CASE("PATH counts converging segments") {
  // Three ancestor HPPs all connect into h.
  auto net = make_net({{"a", 1}, {"b", 1}, {"c", 1}, {"h", 2}},
                      {{"a", "h"}, {"b", "h"}, {"c", "h"}});
  auto table = make_table(net, {{"a", 1.0}, {"b", 1.0}, {"c", 1.0}, {"h", 1.0}});
  auto mpg = mainpath::build_segments(net, table);
  const auto counts = mainpath::converging_path_counts(mpg);
  CHECK(counts[*net.index_of("h")] == 3);
  CHECK(counts[*net.index_of("a")] == 1);
}

TEST_CASE("MP aggregates incoming segments by max") {
  auto net = make_net({{"a", 1}, {"b", 1}, {"x", 2}, {"y", 2}, {"h", 3}},
                      {{"a", "x"}, {"x", "h"}, {"b", "y"}, {"y", "h"}});
  auto table = make_table(
      net, {{"a", 1.0}, {"b", 1.0}, {"x", 0.2}, {"y", 0.5}, {"h", 1.0}}, 0.7);
  auto mpg = mainpath::build_segments(net, table);
  double mp = 0.0;
  REQUIRE(mainpath::min_persistence_gap(mpg, table, *net.index_of("h"), &mp));
  CHECK(mp == doctest::Approx(0.5));
}

TEST_CASE("min_persistence_gap rejects non-HPP arguments") {
  auto net = make_net({{"a", 1}, {"z", 2}}, {{"a", "z"}});
  auto table = make_table(net, {{"a", 1.0}, {"z", 0.1}});
  auto mpg = mainpath::build_segments(net, table);
  double mp = 0.0;
  CHECK_THROWS_AS(
      mainpath::min_persistence_gap(mpg, table, *net.index_of("z"), &mp),
      std::invalid_argument);
}

TEST_CASE("segments are citation subgraphs and PATH sums balance") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    auto net = test_support::random_dag(rng);
    const auto raw = persistence::persistence_scores(net);
    const auto table =
        persistence::normalize_and_select(net, raw, net.assign_layers(), 0.5);
    auto mpg = mainpath::build_segments(net, table);

    std::size_t starts = 0;
    std::vector<std::pair<int, int>> seg_edges;
    for (const auto& seg : mpg.segments) {
      if (seg.nodes.size() == 1) starts++;
      for (std::size_t i = 1; i < seg.nodes.size(); ++i) {
        const auto fwd = net.forward(seg.nodes[i - 1]);
        CHECK(std::find(fwd.begin(), fwd.end(), seg.nodes[i]) != fwd.end());
        seg_edges.emplace_back(seg.nodes[i - 1], seg.nodes[i]);
      }
    }
    std::sort(seg_edges.begin(), seg_edges.end());
    seg_edges.erase(std::unique(seg_edges.begin(), seg_edges.end()),
                    seg_edges.end());
    // Count path starts over distinct on-path nodes with no incoming edge.
    std::size_t start_nodes = 0;
    const auto counts = mainpath::converging_path_counts(mpg);
    for (int v = 0; v < net.node_count(); ++v) {
      bool has_in = false;
      for (const auto& [u, w] : seg_edges) has_in |= (w == v);
      if (mpg.on_path[static_cast<std::size_t>(v)] && !has_in) start_nodes++;
    }
    const auto total = std::accumulate(counts.begin(), counts.end(), 0);
    CHECK(static_cast<std::size_t>(total) == seg_edges.size() + start_nodes);
  }
}

TEST_CASE("segment bottleneck matches brute-force widest path") {
  Rng rng(505);
  for (int trial = 0; trial < 40; ++trial) {
    auto net = test_support::random_dag(rng);
    const auto raw = persistence::persistence_scores(net);
    const auto table =
        persistence::normalize_and_select(net, raw, net.assign_layers(), 0.5);
    auto mpg = mainpath::build_segments(net, table);
    for (const auto& seg : mpg.segments) {
      if (seg.nodes.size() < 2) continue;
      const int a = seg.nodes.front(), h = seg.nodes.back();
      std::vector<int> path{a};
      bool found = false;
      const double best = brute_force_bottleneck(net, table, a, h, path, found);
      REQUIRE(found);
      double seg_min = 1.0;
      for (std::size_t i = 1; i + 1 < seg.nodes.size(); ++i)
        seg_min = std::min(
            seg_min, table.normalized[static_cast<std::size_t>(seg.nodes[i])]);
      CHECK(seg_min == doctest::Approx(best).epsilon(1e-12));
    }
  }
}

TEST_CASE("main paths are deterministic") {
  Rng rng(606);
  auto net = test_support::random_dag(rng);
  const auto raw = persistence::persistence_scores(net);
  const auto table =
      persistence::normalize_and_select(net, raw, net.assign_layers(), 0.5);
  auto mpg1 = mainpath::build_segments(net, table);
  auto mpg2 = mainpath::build_segments(net, table);
  REQUIRE(mpg1.segments.size() == mpg2.segments.size());
  for (std::size_t i = 0; i < mpg1.segments.size(); ++i)
    CHECK(mpg1.segments[i].nodes == mpg2.segments[i].nodes);
  CHECK(mpg1.path_count == mpg2.path_count);
}
