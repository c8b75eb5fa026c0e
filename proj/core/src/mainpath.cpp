#include "citnet/mainpath.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

namespace citnet::mainpath {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Best path v -> ... -> h: widest interior bottleneck, then shortest,
// then lexicographically smallest id sequence (node index order equals id
// order, so successor index decides lexicographic ties).
struct Reach {
  double bottleneck = -1.0;
  int len = 0;
  int succ = -1;
};

bool better(const Reach& a, const Reach& b) {
  if (a.bottleneck != b.bottleneck) return a.bottleneck > b.bottleneck;
  if (a.len != b.len) return a.len < b.len;
  return a.succ < b.succ;
}

class SegmentSearch {
 public:
  SegmentSearch(const CitationNetwork& net,
                const persistence::PersistenceTable& table)
      : net_(net),
        table_(table),
        stamp_(static_cast<std::size_t>(net.node_count()), 0),
        computed_(static_cast<std::size_t>(net.node_count()), 0),
        reach_(static_cast<std::size_t>(net.node_count())) {}

  // Ancestors of h reachable backward without crossing an HPP interior;
  // ancestor HPPs are recorded but not expanded past.
  void collect_ancestors(int h, std::vector<int>& ancestors,
                         std::vector<int>& ancestor_hpps) {
    ++epoch_;
    stamp_[static_cast<std::size_t>(h)] = epoch_;
    std::vector<int> stack{h};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const bool expand = v == h || !table_.is_hpp[static_cast<std::size_t>(v)];
      if (!expand) continue;
      for (int u : net_.backward(v)) {
        if (stamp_[static_cast<std::size_t>(u)] == epoch_) continue;
        stamp_[static_cast<std::size_t>(u)] = epoch_;
        ancestors.push_back(u);
        if (table_.is_hpp[static_cast<std::size_t>(u)])
          ancestor_hpps.push_back(u);
        stack.push_back(u);
      }
    }
  }

  // Memoized widest-path DP toward h, restricted to the stamped ancestor
  // cone. Iterative post-order; cone depth can exceed the C++ stack.
  const Reach& reach(int v, int h) {
    if (!computed_[static_cast<std::size_t>(v)]) {
      std::vector<std::pair<int, std::size_t>> stack{{v, 0}};
      while (!stack.empty()) {
        auto& [node, child] = stack.back();
        const auto fwd = net_.forward(node);
        bool descended = false;
        while (child < fwd.size()) {
          const int w = fwd[child];
          ++child;
          if (w == h || stamp_[static_cast<std::size_t>(w)] != epoch_) continue;
          if (table_.is_hpp[static_cast<std::size_t>(w)]) continue;
          if (!computed_[static_cast<std::size_t>(w)]) {
            stack.emplace_back(w, 0);
            descended = true;
            break;
          }
        }
        if (descended) continue;
        finalize(node, h);
        stack.pop_back();
      }
    }
    return reach_[static_cast<std::size_t>(v)];
  }

  void reset_memo(const std::vector<int>& ancestors) {
    for (int v : ancestors) computed_[static_cast<std::size_t>(v)] = 0;
  }

 private:
  void finalize(int v, int h) {
    Reach best;
    for (int w : net_.forward(v)) {
      Reach cand;
      if (w == h) {
        cand = {kInf, 1, w};  // empty interior
      } else {
        if (stamp_[static_cast<std::size_t>(w)] != epoch_) continue;
        if (table_.is_hpp[static_cast<std::size_t>(w)]) continue;
        const Reach& r = reach_[static_cast<std::size_t>(w)];
        if (r.succ < 0) continue;
        cand = {std::min(table_.normalized[static_cast<std::size_t>(w)],
                         r.bottleneck),
                r.len + 1, w};
      }
      if (best.succ < 0 || better(cand, best)) best = cand;
    }
    reach_[static_cast<std::size_t>(v)] = best;
    computed_[static_cast<std::size_t>(v)] = 1;
  }

  const CitationNetwork& net_;
  const persistence::PersistenceTable& table_;
  std::vector<int> stamp_;
  std::vector<char> computed_;
  std::vector<Reach> reach_;
  int epoch_ = 0;
};

}  // namespace

MainPathGraph build_segments(const CitationNetwork& net,
                             const persistence::PersistenceTable& table) {
  const int n = net.node_count();
  MainPathGraph mpg;
  mpg.on_path.assign(static_cast<std::size_t>(n), 0);
  mpg.path_count.assign(static_cast<std::size_t>(n), 0);
  mpg.mp_gap.assign(static_cast<std::size_t>(n), 0.0);
  mpg.has_mp.assign(static_cast<std::size_t>(n), 0);

  SegmentSearch search(net, table);
  std::vector<int> ancestors, ancestor_hpps;
  for (int h : table.hpp) {
    ancestors.clear();
    ancestor_hpps.clear();
    search.collect_ancestors(h, ancestors, ancestor_hpps);
    if (ancestor_hpps.empty()) {
      mpg.segments.push_back({{h}});  // length-0 path start
      continue;
    }
    std::sort(ancestor_hpps.begin(), ancestor_hpps.end());
    double mp = 0.0;
    for (int a : ancestor_hpps) {
      const Reach& r = search.reach(a, h);
      Segment seg;
      seg.nodes.push_back(a);
      for (int v = r.succ; v != h; v = search.reach(v, h).succ)
        seg.nodes.push_back(v);
      seg.nodes.push_back(h);
      mp = std::max(mp, std::min(r.bottleneck, 1.0));
      mpg.segments.push_back(std::move(seg));
    }
    mpg.mp_gap[static_cast<std::size_t>(h)] = mp;
    mpg.has_mp[static_cast<std::size_t>(h)] = 1;
    search.reset_memo(ancestors);
  }

  std::sort(mpg.segments.begin(), mpg.segments.end(),
            [](const Segment& a, const Segment& b) { return a.nodes < b.nodes; });

  std::vector<std::pair<int, int>> seg_edges;
  for (const auto& seg : mpg.segments) {
    for (int v : seg.nodes) mpg.on_path[static_cast<std::size_t>(v)] = 1;
    for (std::size_t i = 1; i < seg.nodes.size(); ++i)
      seg_edges.emplace_back(seg.nodes[i - 1], seg.nodes[i]);
  }
  std::sort(seg_edges.begin(), seg_edges.end());
  seg_edges.erase(std::unique(seg_edges.begin(), seg_edges.end()),
                  seg_edges.end());
  for (const auto& [u, v] : seg_edges)
    mpg.path_count[static_cast<std::size_t>(v)]++;
  for (int v = 0; v < n; ++v) {
    if (mpg.on_path[static_cast<std::size_t>(v)] &&
        mpg.path_count[static_cast<std::size_t>(v)] == 0)
      mpg.path_count[static_cast<std::size_t>(v)] = 1;  // path start
  }
  return mpg;
}

std::vector<int> converging_path_counts(const MainPathGraph& mpg) {
  return mpg.path_count;
}

bool min_persistence_gap(const MainPathGraph& mpg,
                         const persistence::PersistenceTable& table, int h,
                         double* mp) {
  if (h < 0 || h >= static_cast<int>(table.is_hpp.size()) ||
      !table.is_hpp[static_cast<std::size_t>(h)])
    throw std::invalid_argument("min_persistence_gap: node is not an HPP");
  if (!mpg.has_mp[static_cast<std::size_t>(h)]) return false;
  if (mp) *mp = mpg.mp_gap[static_cast<std::size_t>(h)];
  return true;
}

}  // namespace citnet::mainpath
