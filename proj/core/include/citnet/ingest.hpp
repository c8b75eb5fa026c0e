#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "citnet/network.hpp"

namespace citnet::ingest {

struct NodeRow {
  std::string patent_id;
  int year = 0;
  std::string title;  // pass-through, may be empty
};

struct EdgeRow {
  std::string citing_id;
  std::string cited_id;
};

struct DiagnosticCounts {
  std::int64_t dropped_external = 0;   // edges referencing unknown ids
  std::int64_t deduped = 0;            // repeated edge rows
  std::int64_t dropped_year_order = 0; // citing year < cited year
  std::int64_t dropped_cycle = 0;      // same-year edges closing a cycle
  std::int64_t year_warnings = 0;      // years outside [1790, 2100]
};

// Reads `patent_id,year[,title]` and `citing_id,cited_id` CSVs. Edges to
// unknown ids are dropped (within-domain filtering) and duplicates
// removed, both counted.
std::tuple<std::vector<NodeRow>, std::vector<EdgeRow>, DiagnosticCounts>
load_csv(const std::filesystem::path& nodes_path,
         const std::filesystem::path& edges_path);

// Ingest-mode network from loaded rows; year-order and cycle drops are
// added to `diag`.
CitationNetwork build_network(const std::vector<NodeRow>& nodes,
                              const std::vector<EdgeRow>& edges,
                              DiagnosticCounts& diag);

// Writes nodes.csv / edges.csv in the ingestible format; round-trips
// exactly through load_csv + build_network.
void save_network_csv(const CitationNetwork& net,
                      const std::filesystem::path& out_dir);

// Full pipeline on user-supplied files: load, build, persistence, main
// paths, metrics; writes the analysis CSVs into out_dir.
DiagnosticCounts analyze_file(const std::filesystem::path& nodes_path,
                              const std::filesystem::path& edges_path,
                              double tau,
                              const std::filesystem::path& out_dir);

}  // namespace citnet::ingest
