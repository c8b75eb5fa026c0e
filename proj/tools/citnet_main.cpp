// citnet: synthetic patent citation networks, planted discontinuities, and
// the five discontinuity-identification metrics, as subcommands over
// versionable JSON configs and CSV networks.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "citnet/analysis.hpp"
#include "citnet/convergence.hpp"
#include "citnet/csv.hpp"
#include "citnet/experiment.hpp"
#include "citnet/ingest.hpp"
#include "citnet/netgen.hpp"
#include "citnet/reliability.hpp"

namespace fs = std::filesystem;

namespace {

nlohmann::json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed JSON in " + path.string() + ": " +
                                e.what());
  }
  return j;
}

citnet::CitationNetwork load_network_dir(const fs::path& dir,
                                         citnet::CitationNetwork::BuildMode mode) {
  auto [nodes, edges, diag] =
      citnet::ingest::load_csv(dir / "nodes.csv", dir / "edges.csv");
  std::vector<citnet::PatentRecord> records;
  records.reserve(nodes.size());
  for (const auto& n : nodes)
    records.push_back({n.patent_id, n.year, citnet::DomainTag::None});
  std::vector<citnet::CitationEdge> citation_edges;
  citation_edges.reserve(edges.size());
  for (const auto& e : edges)
    citation_edges.push_back({e.cited_id, e.citing_id});
  return citnet::CitationNetwork::build(std::move(records),
                                        std::move(citation_edges), mode);
}

void write_reliability_csv(const citnet::reliability::DistributionStats& stats,
                           const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "growth_rate,rank_slope,lag_mode,lag_mean,backward_rho\n";
  if (stats.present) {
    out << citnet::csv::format_double(stats.growth_rate) << ','
        << citnet::csv::format_double(stats.rank_slope) << ',' << stats.lag_mode
        << ',' << citnet::csv::format_double(stats.lag_mean) << ','
        << citnet::csv::format_double(stats.backward_rho) << '\n';
  }
}

int run_generate(const fs::path& config, const fs::path& out_dir,
                 std::optional<std::uint64_t> seed) {
  auto cfg = citnet::netgen::GenerationConfig::from_json(load_json(config));
  if (seed) cfg.seed = *seed;
  cfg.validate();
  auto [net, trace] = citnet::netgen::generate(cfg);

  fs::create_directories(out_dir);
  citnet::ingest::save_network_csv(net, out_dir);

  nlohmann::json jtrace;
  nlohmann::json yearly = nlohmann::json::object();
  for (std::size_t t = 1; t < trace.yearly_counts.size(); ++t)
    yearly[std::to_string(t)] = trace.yearly_counts[t];
  jtrace["yearly_counts"] = yearly;
  jtrace["citation_counts"] = trace.citation_counts;
  jtrace["assigned_years"] = trace.assigned_years;
  jtrace["dropped_citations"] = trace.dropped_citations;
  jtrace["config"] = cfg.to_json();
  std::ofstream tout(out_dir / "trace.json", std::ios::binary);
  if (!tout) throw std::runtime_error("cannot write trace.json");
  tout << jtrace.dump(2) << '\n';

  write_reliability_csv(citnet::reliability::compute(net),
                        out_dir / "reliability.csv");
  return 0;
}

int run_combine(const fs::path& config, const fs::path& net_a_dir,
                const fs::path& net_b_dir, const fs::path& out_dir,
                std::optional<std::uint64_t> seed) {
  auto cfg = citnet::convergence::ConvergenceConfig::from_json(load_json(config));
  if (seed) cfg.seed = *seed;
  auto net_a = load_network_dir(net_a_dir,
                                citnet::CitationNetwork::BuildMode::Strict);
  auto net_b = load_network_dir(net_b_dir,
                                citnet::CitationNetwork::BuildMode::Strict);
  auto combined = citnet::convergence::combine(net_a, net_b, cfg);

  fs::create_directories(out_dir);
  citnet::ingest::save_network_csv(combined.network, out_dir);

  const auto d = combined.network.index_of(combined.discontinuity_id);
  nlohmann::json jd;
  jd["id"] = combined.discontinuity_id;
  jd["year"] = combined.network.node(*d).year;
  nlohmann::json cited = nlohmann::json::array();
  for (int u : combined.network.backward(*d))
    cited.push_back(combined.network.node(u).id);
  jd["backward_citations"] = cited;
  jd["forward_citations"] = combined.network.fwdcit(*d);
  jd["skipped_replacements"] = combined.skipped_replacements;
  jd["dropped_boost"] = combined.dropped_boost;
  jd["config"] = cfg.to_json();
  std::ofstream dout(out_dir / "discontinuity.json", std::ios::binary);
  if (!dout) throw std::runtime_error("cannot write discontinuity.json");
  dout << jd.dump(2) << '\n';

  std::ofstream rout(out_dir / "rewire_log.csv", std::ios::binary);
  if (!rout) throw std::runtime_error("cannot write rewire_log.csv");
  rout << "original_cited,original_citing,new_cited,year\n";
  for (const auto& ev : combined.rewire_log)
    rout << citnet::csv::escape(ev.original_cited) << ','
         << citnet::csv::escape(ev.original_citing) << ','
         << citnet::csv::escape(ev.new_cited) << ',' << ev.year << '\n';
  return 0;
}

int run_analyze(const fs::path& net_dir, double tau, const fs::path& out_dir) {
  auto net = load_network_dir(net_dir,
                              citnet::CitationNetwork::BuildMode::Ingest);
  auto result = citnet::analysis::analyze(net, tau);
  citnet::analysis::write_all(net, result, out_dir);
  return 0;
}

int run_experiment(const fs::path& config, const fs::path& out_dir,
                   const std::string& profile,
                   std::optional<std::uint64_t> seed) {
  auto cfg = citnet::experiment::ExperimentConfig::from_json(load_json(config));
  cfg.quick_profile = profile == "quick";
  if (seed) cfg.master_seed = *seed;
  auto summary = citnet::experiment::run_experiment(cfg);
  citnet::experiment::emit_report(summary, out_dir);
  if (summary.failed_count > 0) {
    std::cerr << "citnet: " << summary.failed_count
              << " replication(s) failed; see summary.json\n";
    return 2;
  }
  return 0;
}

int run_ingest_analyze(const fs::path& nodes, const fs::path& edges, double tau,
                       const fs::path& out_dir) {
  const auto diag = citnet::ingest::analyze_file(nodes, edges, tau, out_dir);
  if (diag.dropped_external || diag.deduped || diag.dropped_year_order ||
      diag.dropped_cycle) {
    std::cerr << "citnet: dropped " << diag.dropped_external
              << " external edge(s), " << diag.deduped << " duplicate(s), "
              << diag.dropped_year_order << " year-order violation(s), "
              << diag.dropped_cycle << " cycle-closing edge(s)\n";
  }
  if (diag.year_warnings)
    std::cerr << "citnet: " << diag.year_warnings
              << " node(s) with implausible year\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patent citation network lab: generation, designed "
               "discontinuities, and discontinuity metrics"};
  app.require_subcommand(1);

  std::string config, net_dir, net_a, net_b, nodes_file, edges_file, out_dir;
  std::string profile = "full";
  double tau = 0.5;
  std::optional<std::uint64_t> seed;

  auto* generate = app.add_subcommand("generate", "Generate a synthetic network");
  generate->add_option("--config", config, "GenerationConfig JSON")->required();
  generate->add_option("--out", out_dir, "Output directory")->required();
  generate->add_option("--seed", seed, "Seed override");

  auto* combine = app.add_subcommand("combine", "Fuse two networks at a designed discontinuity");
  combine->add_option("--config", config, "ConvergenceConfig JSON")->required();
  combine->add_option("--net-a", net_a, "Domain A network directory")->required();
  combine->add_option("--net-b", net_b, "Domain B network directory")->required();
  combine->add_option("--out", out_dir, "Output directory")->required();
  combine->add_option("--seed", seed, "Seed override");

  auto* analyze = app.add_subcommand("analyze", "Persistence, main paths, and metrics for a network");
  analyze->add_option("--net", net_dir, "Network directory (nodes.csv, edges.csv)")->required();
  analyze->add_option("--tau", tau, "HPP threshold in (0, 1]");
  analyze->add_option("--out", out_dir, "Output directory")->required();

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo identification study");
  experiment->add_option("--config", config, "ExperimentConfig JSON")->required();
  experiment->add_option("--out", out_dir, "Output directory")->required();
  experiment->add_option("--profile", profile, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  experiment->add_option("--seed", seed, "Master seed override");

  auto* ingest = app.add_subcommand("ingest-analyze", "Run the metric pipeline on CSV exports");
  ingest->add_option("--nodes", nodes_file, "patent_id,year[,title] CSV")->required();
  ingest->add_option("--edges", edges_file, "citing_id,cited_id CSV")->required();
  ingest->add_option("--tau", tau, "HPP threshold in (0, 1]");
  ingest->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (generate->parsed()) return run_generate(config, out_dir, seed);
    if (combine->parsed()) return run_combine(config, net_a, net_b, out_dir, seed);
    if (analyze->parsed()) return run_analyze(net_dir, tau, out_dir);
    if (experiment->parsed()) return run_experiment(config, out_dir, profile, seed);
    if (ingest->parsed())
      return run_ingest_analyze(nodes_file, edges_file, tau, out_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "citnet: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "citnet: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
