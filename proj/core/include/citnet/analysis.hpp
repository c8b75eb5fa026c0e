#pragma once

#include <filesystem>
#include <vector>

#include "citnet/mainpath.hpp"
#include "citnet/metrics.hpp"
#include "citnet/network.hpp"
#include "citnet/persistence.hpp"

namespace citnet::analysis {

struct AnalysisResult {
  std::vector<int> layers;
  persistence::PersistenceTable table;
  mainpath::MainPathGraph mpg;
  metrics::MetricReport report;
};

// persistence -> layer normalization / HPP selection -> main paths ->
// metrics, on an already built network.
AnalysisResult analyze(const CitationNetwork& net, double tau);

void write_persistence_csv(const CitationNetwork& net, const AnalysisResult& r,
                           const std::filesystem::path& path);
void write_mainpaths_csv(const CitationNetwork& net, const AnalysisResult& r,
                         const std::filesystem::path& path);
void write_metrics_csv(const AnalysisResult& r,
                       const std::filesystem::path& path);
void write_topk_csv(const AnalysisResult& r, int k,
                    const std::filesystem::path& path);

// persistence.csv, mainpaths.csv, metrics.csv, top_k.csv under out_dir.
void write_all(const CitationNetwork& net, const AnalysisResult& r,
               const std::filesystem::path& out_dir);

}  // namespace citnet::analysis
