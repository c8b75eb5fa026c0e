#pragma once

#include <vector>

#include "citnet/network.hpp"

namespace citnet::persistence {

struct PersistenceTable {
  std::vector<double> raw;         // per node index
  std::vector<double> normalized;  // per-layer max normalization, in [0, 1]
  std::vector<char> is_hpp;
  std::vector<int> hpp;            // ascending node indices
  double tau = 0.5;
};

// Knowledge persistence P(i): total genome share of patent i surviving in
// the network's sink patents, under equal-split inheritance: each citing
// patent divides its traceable knowledge evenly over its backward
// citations. Computed in O(V+E) by reverse-topological propagation.
// own_novelty_weight (alpha) retains that fraction of a patent's mass at
// the patent itself instead of passing it upstream; 0 is the pure split.
std::vector<double> persistence_scores(const CitationNetwork& net,
                                       double own_novelty_weight = 0.0);

// Exact genome share g(i, s): sum over all directed citation paths
// i -> ... -> s of the product of 1/BWDCIT at every node after i.
// Explicit path enumeration; refuses networks above 20 nodes.
double genome_oracle(const CitationNetwork& net, int i, int s);

// Layer-normalizes raw persistence and selects HPPs at threshold tau.
PersistenceTable normalize_and_select(const CitationNetwork& net,
                                      const std::vector<double>& raw,
                                      const std::vector<int>& layers,
                                      double tau);

}  // namespace citnet::persistence
