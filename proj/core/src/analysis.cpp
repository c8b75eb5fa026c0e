#include "citnet/analysis.hpp"

#include <fstream>
#include <stdexcept>

#include "citnet/csv.hpp"

namespace citnet::analysis {

AnalysisResult analyze(const CitationNetwork& net, double tau) {
  AnalysisResult r;
  r.layers = net.assign_layers();
  auto raw = persistence::persistence_scores(net);
  r.table = persistence::normalize_and_select(net, raw, r.layers, tau);
  r.mpg = mainpath::build_segments(net, r.table);
  r.report = metrics::compute_metrics(net, r.table, r.mpg);
  return r;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // LF endings everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_persistence_csv(const CitationNetwork& net, const AnalysisResult& r,
                           const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "id,year,layer,raw,normalized,is_hpp\n";
  for (int v = 0; v < net.node_count(); ++v) {
    const auto& rec = net.node(v);
    out << csv::escape(rec.id) << ',' << rec.year << ','
        << r.layers[static_cast<std::size_t>(v)] << ','
        << csv::format_double(r.table.raw[static_cast<std::size_t>(v)]) << ','
        << csv::format_double(r.table.normalized[static_cast<std::size_t>(v)])
        << ',' << (r.table.is_hpp[static_cast<std::size_t>(v)] ? 1 : 0) << '\n';
  }
}

void write_mainpaths_csv(const CitationNetwork& net, const AnalysisResult& r,
                         const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "from_id,to_id,segment_id\n";
  int seg_id = 0;
  for (const auto& seg : r.mpg.segments) {
    for (std::size_t i = 1; i < seg.nodes.size(); ++i) {
      out << csv::escape(net.node(seg.nodes[i - 1]).id) << ','
          << csv::escape(net.node(seg.nodes[i]).id) << ',' << seg_id << '\n';
    }
    ++seg_id;
  }
}

void write_metrics_csv(const AnalysisResult& r,
                       const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "id,year,fwdcit,bwdcit,p,np,path,mp,m1,m2,m3,m4,m5\n";
  for (const auto& row : r.report.rows) {
    out << csv::escape(row.id) << ',' << row.year << ',' << row.fwdcit << ','
        << row.bwdcit << ',' << csv::format_double(row.p) << ','
        << csv::format_double(row.np) << ',' << row.path << ',';
    if (row.has_mp) out << csv::format_double(row.mp);
    out << ',' << csv::format_double(row.m1) << ','
        << csv::format_double(row.m2) << ',' << csv::format_double(row.m3)
        << ',';
    if (row.has_m4) out << csv::format_double(row.m4);
    out << ',' << csv::format_double(row.m5) << '\n';
  }
}

void write_topk_csv(const AnalysisResult& r, int k,
                    const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "metric,rank,id,year\n";
  for (int metric = 1; metric <= metrics::kMetricCount; ++metric) {
    const auto top = metrics::rank(r.report, metric, k);
    int position = 1;
    for (const auto& entry : top) {
      const auto& row = r.report.rows[static_cast<std::size_t>(entry.node)];
      out << metric << ',' << position++ << ',' << csv::escape(row.id) << ','
          << row.year << '\n';
    }
  }
}

void write_all(const CitationNetwork& net, const AnalysisResult& r,
               const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_persistence_csv(net, r, out_dir / "persistence.csv");
  write_mainpaths_csv(net, r, out_dir / "mainpaths.csv");
  write_metrics_csv(r, out_dir / "metrics.csv");
  write_topk_csv(r, 50, out_dir / "top_k.csv");
}

}  // namespace citnet::analysis
