#include "citnet/network.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <utility>

namespace citnet {

const char* to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::None: return "none";
    case DomainTag::A: return "A";
    case DomainTag::B: return "B";
    case DomainTag::Merged: return "merged";
  }
  return "none";
}

namespace {

using IndexEdge = std::pair<int, int>;  // (cited, citing) node indices

// True iff `from` reaches `to` along already accepted same-year edges.
bool reaches(const std::vector<std::vector<int>>& same_year_fwd, int from, int to) {
  std::vector<int> stack{from};
  std::vector<char> seen(same_year_fwd.size(), 0);
  seen[static_cast<std::size_t>(from)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == to) return true;
    for (int w : same_year_fwd[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

CitationNetwork CitationNetwork::build(std::vector<PatentRecord> nodes,
                                       std::vector<CitationEdge> edges,
                                       BuildMode mode, BuildStats* stats) {
  CitationNetwork net;
  std::sort(nodes.begin(), nodes.end(),
            [](const PatentRecord& a, const PatentRecord& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i].id == nodes[i - 1].id)
      throw std::invalid_argument("duplicate patent id: " + nodes[i].id);
  }
  net.nodes_ = std::move(nodes);

  if (!net.nodes_.empty()) {
    net.min_year_ = net.max_year_ = net.nodes_.front().year;
    for (const auto& n : net.nodes_) {
      net.min_year_ = std::min(net.min_year_, n.year);
      net.max_year_ = std::max(net.max_year_, n.year);
    }
  }

  BuildStats local;
  BuildStats& st = stats ? *stats : local;

  std::vector<IndexEdge> idx_edges;
  idx_edges.reserve(edges.size());
  for (const auto& e : edges) {
    auto ci = net.index_of(e.cited);
    auto vi = net.index_of(e.citing);
    if (!ci) throw std::invalid_argument("edge references unknown id: " + e.cited);
    if (!vi) throw std::invalid_argument("edge references unknown id: " + e.citing);
    if (*ci == *vi)
      throw std::invalid_argument("self-citation forbidden: " + e.cited);
    const int cy = net.nodes_[static_cast<std::size_t>(*ci)].year;
    const int vy = net.nodes_[static_cast<std::size_t>(*vi)].year;
    if (mode == BuildMode::Strict) {
      if (vy <= cy)
        throw std::invalid_argument("citing year must exceed cited year: " +
                                    e.cited + " -> " + e.citing);
    } else if (vy < cy) {
      st.dropped_year_order++;
      continue;
    }
    idx_edges.emplace_back(*ci, *vi);
  }

  std::sort(idx_edges.begin(), idx_edges.end());
  if (mode == BuildMode::Strict) {
    auto dup = std::adjacent_find(idx_edges.begin(), idx_edges.end());
    if (dup != idx_edges.end())
      throw std::invalid_argument("duplicate citation edge: " +
                                  net.nodes_[static_cast<std::size_t>(dup->first)].id);
  } else {
    auto last = std::unique(idx_edges.begin(), idx_edges.end());
    st.deduped += idx_edges.end() - last;
    idx_edges.erase(last, idx_edges.end());
  }

  const std::size_t nn = net.nodes_.size();
  net.forward_.assign(nn, {});
  net.backward_.assign(nn, {});

  // Same-year edges (ingest only) can close cycles; strictly increasing
  // edges cannot, and a cycle can never leave its year, so the check is
  // confined to the accepted same-year edge set.
  std::vector<std::vector<int>> same_year_fwd;
  auto accept = [&](const IndexEdge& e) {
    net.forward_[static_cast<std::size_t>(e.first)].push_back(e.second);
    net.backward_[static_cast<std::size_t>(e.second)].push_back(e.first);
    net.edge_count_++;
  };
  for (const auto& e : idx_edges) {
    const int cy = net.nodes_[static_cast<std::size_t>(e.first)].year;
    const int vy = net.nodes_[static_cast<std::size_t>(e.second)].year;
    if (cy == vy) {
      if (same_year_fwd.empty()) same_year_fwd.assign(nn, {});
      if (reaches(same_year_fwd, e.second, e.first)) {
        st.dropped_cycle++;
        continue;
      }
      same_year_fwd[static_cast<std::size_t>(e.first)].push_back(e.second);
    }
    accept(e);
  }

  for (auto& adj : net.forward_) std::sort(adj.begin(), adj.end());
  for (auto& adj : net.backward_) std::sort(adj.begin(), adj.end());
  return net;
}

std::optional<int> CitationNetwork::index_of(std::string_view id) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), id,
      [](const PatentRecord& n, std::string_view key) { return n.id < key; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - nodes_.begin());
}

std::vector<int> CitationNetwork::topological_order() const {
  const int n = node_count();
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    indegree[static_cast<std::size_t>(v)] = bwdcit(v);

  using Key = std::pair<int, int>;  // (year, index); index order == id order
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0)
      ready.emplace(node(v).year, v);

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const int v = ready.top().second;
    ready.pop();
    order.push_back(v);
    for (int w : forward(v)) {
      if (--indegree[static_cast<std::size_t>(w)] == 0)
        ready.emplace(node(w).year, w);
    }
  }
  return order;
}

std::vector<int> CitationNetwork::assign_layers() const {
  std::vector<int> layer(static_cast<std::size_t>(node_count()), 1);
  for (int v : topological_order()) {
    int best = 0;
    for (int u : backward(v))
      best = std::max(best, layer[static_cast<std::size_t>(u)]);
    layer[static_cast<std::size_t>(v)] = best + 1;
  }
  return layer;
}

std::vector<CitationEdge> CitationNetwork::edge_list() const {
  std::vector<CitationEdge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int v = 0; v < node_count(); ++v)
    for (int w : forward(v))
      out.push_back({node(v).id, node(w).id});
  return out;  // forward_ is index-sorted and indices follow id order
}

}  // namespace citnet
