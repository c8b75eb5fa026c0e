#include "citnet/persistence.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace citnet::persistence {

std::vector<double> persistence_scores(const CitationNetwork& net,
                                       double own_novelty_weight) {
  const int n = net.node_count();
  std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
  const auto order = net.topological_order();
  // u(j) = [j sink] + sum over citers k of (1-alpha) * u(k)/BWDCIT(k),
  // accumulated sinks-first.
  const double pass = 1.0 - own_novelty_weight;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int k = *it;
    if (net.fwdcit(k) == 0) mass[static_cast<std::size_t>(k)] += 1.0;
    const int b = net.bwdcit(k);
    if (b == 0) continue;
    const double share = pass * mass[static_cast<std::size_t>(k)] / b;
    for (int j : net.backward(k)) mass[static_cast<std::size_t>(j)] += share;
  }
  // A sink's own unit is its gene, not persistence.
  for (int v = 0; v < n; ++v)
    if (net.fwdcit(v) == 0) mass[static_cast<std::size_t>(v)] -= 1.0;
  return mass;
}

namespace {

double enumerate_paths(const CitationNetwork& net, int v, int target) {
  if (v == target) return 1.0;
  double sum = 0.0;
  for (int w : net.forward(v)) {
    const double below = enumerate_paths(net, w, target);
    if (below > 0.0) sum += below / net.bwdcit(w);
  }
  return sum;
}

}  // namespace

double genome_oracle(const CitationNetwork& net, int i, int s) {
  if (net.node_count() > 20)
    throw std::invalid_argument("genome_oracle: network too large (> 20 nodes)");
  if (i < 0 || i >= net.node_count() || s < 0 || s >= net.node_count())
    throw std::invalid_argument("genome_oracle: node index out of range");
  if (i == s) return 1.0;  // empty path
  // Each path step into w carries weight 1/BWDCIT(w); the enumeration walks
  // every directed path from i to s.
  return enumerate_paths(net, i, s);
}

PersistenceTable normalize_and_select(const CitationNetwork& net,
                                      const std::vector<double>& raw,
                                      const std::vector<int>& layers,
                                      double tau) {
  if (tau <= 0.0 || tau > 1.0)
    throw std::invalid_argument("normalize_and_select: tau must be in (0, 1]");
  const int n = net.node_count();
  if (static_cast<int>(raw.size()) != n || static_cast<int>(layers.size()) != n)
    throw std::invalid_argument("normalize_and_select: size mismatch");

  int max_layer = 0;
  for (int l : layers) max_layer = std::max(max_layer, l);
  std::vector<double> layer_max(static_cast<std::size_t>(max_layer) + 1, 0.0);
  for (int v = 0; v < n; ++v) {
    auto& m = layer_max[static_cast<std::size_t>(layers[static_cast<std::size_t>(v)])];
    m = std::max(m, raw[static_cast<std::size_t>(v)]);
  }

  PersistenceTable table;
  table.tau = tau;
  table.raw = raw;
  table.normalized.assign(static_cast<std::size_t>(n), 0.0);
  table.is_hpp.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const double m = layer_max[static_cast<std::size_t>(layers[static_cast<std::size_t>(v)])];
    const double np = m > 0.0 ? raw[static_cast<std::size_t>(v)] / m : 0.0;
    table.normalized[static_cast<std::size_t>(v)] = np;
    if (np >= tau) {
      table.is_hpp[static_cast<std::size_t>(v)] = 1;
      table.hpp.push_back(v);
    }
  }
  return table;
}

}  // namespace citnet::persistence
