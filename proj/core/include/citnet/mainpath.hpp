#pragma once

#include <vector>

#include "citnet/network.hpp"
#include "citnet/persistence.hpp"

namespace citnet::mainpath {

// One main-path segment in forward (cited -> citing) order. The upstream
// endpoint is an HPP (or the segment is a length-0 path start), the
// downstream endpoint is an HPP, and no interior node is an HPP.
struct Segment {
  std::vector<int> nodes;
};

struct MainPathGraph {
  std::vector<Segment> segments;   // sorted by id sequence
  std::vector<char> on_path;       // per node
  std::vector<int> path_count;     // PATH per node; 0 off-path
  std::vector<double> mp_gap;      // per node; meaningful where has_mp
  std::vector<char> has_mp;
};

// Connects every HPP to each of its ancestor HPPs reachable without
// passing through another HPP, picking the citation path that maximizes
// the minimum normalized persistence over interior nodes (widest path;
// ties: shorter path, then lexicographically smallest id sequence).
// HPPs with no HPP ancestor become length-0 path starts.
MainPathGraph build_segments(const CitationNetwork& net,
                             const persistence::PersistenceTable& table);

// PATH(v): distinct-edge in-degree of v in the segment graph; 1 for
// on-path nodes with no upstream segment edge, 0 off-path.
std::vector<int> converging_path_counts(const MainPathGraph& mpg);

// MP(h): max over h's incoming segments of the minimum interior normalized
// persistence (1 for a direct HPP-to-HPP edge). Returns false if h has no
// ancestor HPP. Throws if h is not an HPP.
bool min_persistence_gap(const MainPathGraph& mpg,
                         const persistence::PersistenceTable& table, int h,
                         double* mp);

}  // namespace citnet::mainpath
