#include "citnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <stdexcept>

#include "citnet/analysis.hpp"
#include "citnet/csv.hpp"

namespace citnet::ingest {

namespace {

void check_header(const std::vector<std::string>& got,
                  std::initializer_list<const char*> want,
                  const std::filesystem::path& path) {
  if (got.size() != want.size() ||
      !std::equal(got.begin(), got.end(), want.begin()))
    throw std::runtime_error("unexpected header in " + path.string());
}

int parse_year(const std::string& s, const std::filesystem::path& path) {
  int year = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), year);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::runtime_error("unparsable year `" + s + "` in " + path.string());
  return year;
}

}  // namespace

std::tuple<std::vector<NodeRow>, std::vector<EdgeRow>, DiagnosticCounts>
load_csv(const std::filesystem::path& nodes_path,
         const std::filesystem::path& edges_path) {
  DiagnosticCounts diag;

  const auto nodes_table = csv::read_file(nodes_path);
  const bool has_title = nodes_table.header.size() == 3;
  if (has_title)
    check_header(nodes_table.header, {"patent_id", "year", "title"}, nodes_path);
  else
    check_header(nodes_table.header, {"patent_id", "year"}, nodes_path);
  std::vector<NodeRow> nodes;
  nodes.reserve(nodes_table.rows.size());
  std::set<std::string> ids;
  for (const auto& row : nodes_table.rows) {
    if (row.size() != nodes_table.header.size())
      throw std::runtime_error("ragged row in " + nodes_path.string());
    NodeRow n;
    n.patent_id = row[0];
    if (n.patent_id.empty())
      throw std::runtime_error("empty patent_id in " + nodes_path.string());
    n.year = parse_year(row[1], nodes_path);
    if (n.year < 1790 || n.year > 2100) diag.year_warnings++;
    if (has_title) n.title = row[2];
    ids.insert(n.patent_id);
    nodes.push_back(std::move(n));
  }

  const auto edges_table = csv::read_file(edges_path);
  check_header(edges_table.header, {"citing_id", "cited_id"}, edges_path);
  std::vector<EdgeRow> edges;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : edges_table.rows) {
    if (row.size() != 2)
      throw std::runtime_error("ragged row in " + edges_path.string());
    if (row[0].empty() || row[1].empty())
      throw std::runtime_error("empty id in " + edges_path.string());
    if (!ids.count(row[0]) || !ids.count(row[1])) {
      diag.dropped_external++;
      continue;
    }
    if (!seen.emplace(row[0], row[1]).second) {
      diag.deduped++;
      continue;
    }
    edges.push_back({row[0], row[1]});
  }
  return {std::move(nodes), std::move(edges), diag};
}

CitationNetwork build_network(const std::vector<NodeRow>& nodes,
                              const std::vector<EdgeRow>& edges,
                              DiagnosticCounts& diag) {
  std::vector<PatentRecord> records;
  records.reserve(nodes.size());
  for (const auto& n : nodes)
    records.push_back({n.patent_id, n.year, DomainTag::None});
  std::vector<CitationEdge> citation_edges;
  citation_edges.reserve(edges.size());
  for (const auto& e : edges)
    citation_edges.push_back({e.cited_id, e.citing_id});
  BuildStats stats;
  auto net = CitationNetwork::build(std::move(records),
                                    std::move(citation_edges),
                                    CitationNetwork::BuildMode::Ingest, &stats);
  diag.dropped_year_order += stats.dropped_year_order;
  diag.dropped_cycle += stats.dropped_cycle;
  diag.deduped += stats.deduped;
  return net;
}

void save_network_csv(const CitationNetwork& net,
                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir / "nodes.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write nodes.csv");
    out << "patent_id,year\n";
    for (const auto& rec : net.nodes())
      out << csv::escape(rec.id) << ',' << rec.year << '\n';
  }
  {
    std::ofstream out(out_dir / "edges.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write edges.csv");
    out << "citing_id,cited_id\n";
    for (const auto& e : net.edge_list())
      out << csv::escape(e.citing) << ',' << csv::escape(e.cited) << '\n';
  }
}

DiagnosticCounts analyze_file(const std::filesystem::path& nodes_path,
                              const std::filesystem::path& edges_path,
                              double tau,
                              const std::filesystem::path& out_dir) {
  auto [nodes, edges, diag] = load_csv(nodes_path, edges_path);
  auto net = build_network(nodes, edges, diag);
  auto result = analysis::analyze(net, tau);
  analysis::write_all(net, result, out_dir);
  return diag;
}

}  // namespace citnet::ingest
