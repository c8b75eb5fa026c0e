#include "citnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "citnet/analysis.hpp"
#include "citnet/csv.hpp"
#include "citnet/rng.hpp"

namespace citnet::experiment {

int ExperimentConfig::replications_for(int size) const {
  if (quick_profile && size >= 10000) return std::min(replications, 20);
  return replications;
}

void ExperimentConfig::validate() const {
  if (sizes.empty())
    throw std::invalid_argument("invalid config field `sizes`: must be non-empty");
  for (int s : sizes)
    if (s < 4)
      throw std::invalid_argument("invalid config field `sizes`: sizes must be >= 4");
  if (replications < 1)
    throw std::invalid_argument("invalid config field `replications`: must be >= 1");
  if (top_k_groups.empty())
    throw std::invalid_argument(
        "invalid config field `top_k_groups`: must be non-empty");
  if (tau <= 0.0 || tau > 1.0)
    throw std::invalid_argument("invalid config field `tau`: must be in (0, 1]");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  static const char* known[] = {"sizes",      "replications", "top_k_groups",
                                "master_seed", "generation",  "convergence",
                                "tau",        "parallelism"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return it.key() == k;
        }) == std::end(known))
      throw std::invalid_argument("unknown config field `" + it.key() + "`");
  }
  ExperimentConfig cfg;
  try {
    if (j.contains("sizes")) cfg.sizes = j.at("sizes").get<std::vector<int>>();
    if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
    if (j.contains("top_k_groups"))
      cfg.top_k_groups = j.at("top_k_groups").get<std::vector<int>>();
    if (j.contains("master_seed"))
      cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
    if (j.contains("parallelism")) cfg.parallelism = j.at("parallelism").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid experiment config: ") + e.what());
  }
  if (j.contains("generation"))
    cfg.generation = netgen::GenerationConfig::from_json(j.at("generation"));
  if (j.contains("convergence"))
    cfg.convergence = convergence::ConvergenceConfig::from_json(j.at("convergence"));
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"sizes", sizes},
          {"replications", replications},
          {"top_k_groups", top_k_groups},
          {"master_seed", master_seed},
          {"generation", generation.to_json()},
          {"convergence", convergence.to_json()},
          {"tau", tau},
          {"parallelism", parallelism}};
}

double ExperimentSummary::probability(int size, int metric, int k) const {
  std::int64_t completed = 0, hits = 0;
  for (const auto& o : outcomes) {
    if (o.size != size || o.failed) continue;
    completed++;
    if (o.rank_of_d[static_cast<std::size_t>(metric - 1)] <= k) hits++;
  }
  if (completed == 0) return 0.0;
  return static_cast<double>(hits) / static_cast<double>(completed);
}

ReplicationOutcome run_replication(int size,
                                   const netgen::GenerationConfig& gen,
                                   const convergence::ConvergenceConfig& conv,
                                   double tau, std::uint64_t seed,
                                   int replication) {
  ReplicationOutcome out;
  out.size = size;
  out.replication = replication;

  netgen::GenerationConfig gen_a = gen;
  gen_a.n = size / 2 + size % 2;  // remainder to A
  gen_a.seed = derive_seed(seed, 1);
  netgen::GenerationConfig gen_b = gen;
  gen_b.n = size / 2;
  gen_b.seed = derive_seed(seed, 2);
  convergence::ConvergenceConfig conv_rep = conv;
  conv_rep.seed = derive_seed(seed, 3);

  auto [net_a, trace_a] = netgen::generate(gen_a);
  auto [net_b, trace_b] = netgen::generate(gen_b);
  out.stats = reliability::compute(net_a);

  auto combined = convergence::combine(net_a, net_b, conv_rep);
  const auto result = analysis::analyze(combined.network, tau);
  const auto d = combined.network.index_of(combined.discontinuity_id);
  if (!d) throw std::runtime_error("designed discontinuity missing from network");
  for (int metric = 1; metric <= 5; ++metric)
    out.rank_of_d[static_cast<std::size_t>(metric - 1)] =
        metrics::rank_of(result.report, metric, *d);
  return out;
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  cfg.generation.validate();

  ExperimentSummary summary;
  summary.sizes = cfg.sizes;
  summary.top_k_groups = cfg.top_k_groups;
  summary.profile = cfg.quick_profile ? "quick" : "full";
  summary.config = cfg.to_json();

  struct Task {
    int size;
    int rep;
  };
  std::vector<Task> tasks;
  for (int size : cfg.sizes)
    for (int rep = 0; rep < cfg.replications_for(size); ++rep)
      tasks.push_back({size, rep});
  summary.outcomes.resize(tasks.size());

  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = cfg.parallelism > 0
                               ? static_cast<unsigned>(cfg.parallelism)
                               : std::max(1u, hw);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task t = tasks[i];
      // Seeds keyed by (size, replication): adding sizes or replications
      // leaves existing cells untouched.
      const auto seed = derive_seed(cfg.master_seed,
                                    static_cast<std::uint64_t>(t.size),
                                    static_cast<std::uint64_t>(t.rep));
      try {
        summary.outcomes[i] = run_replication(t.size, cfg.generation,
                                              cfg.convergence, cfg.tau, seed,
                                              t.rep);
      } catch (const std::exception& e) {
        summary.outcomes[i].size = t.size;
        summary.outcomes[i].replication = t.rep;
        summary.outcomes[i].failed = true;
        summary.outcomes[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (const auto& o : summary.outcomes)
    if (o.failed) summary.failed_count++;
  return summary;
}

void emit_report(const ExperimentSummary& summary,
                 const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    std::ofstream out(out_dir / "fig11.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write fig11.csv");
    out << "size,metric,k,probability\n";
    for (int size : summary.sizes)
      for (int metric = 1; metric <= 5; ++metric)
        for (int k : summary.top_k_groups)
          out << size << ',' << metric << ',' << k << ','
              << csv::format_double(summary.probability(size, metric, k))
              << '\n';
  }
  {
    std::ofstream out(out_dir / "fig12.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write fig12.csv");
    out << "metric,k";
    for (int size : summary.sizes) out << ",size_" << size;
    out << '\n';
    for (int metric = 1; metric <= 5; ++metric) {
      for (int k : summary.top_k_groups) {
        out << metric << ',' << k;
        for (int size : summary.sizes)
          out << ',' << csv::format_double(summary.probability(size, metric, k));
        out << '\n';
      }
    }
  }
  {
    std::ofstream out(out_dir / "ranks.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write ranks.csv");
    out << "size,replication,m1,m2,m3,m4,m5\n";
    for (const auto& o : summary.outcomes) {
      if (o.failed) continue;
      out << o.size << ',' << o.replication;
      for (const auto r : o.rank_of_d) out << ',' << r;
      out << '\n';
    }
  }
  {
    std::ofstream out(out_dir / "reliability.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write reliability.csv");
    out << "size,replication,growth_rate,rank_slope,lag_mode,lag_mean,"
           "backward_rho\n";
    for (const auto& o : summary.outcomes) {
      if (o.failed || !o.stats.present) continue;
      out << o.size << ',' << o.replication << ','
          << csv::format_double(o.stats.growth_rate) << ','
          << csv::format_double(o.stats.rank_slope) << ',' << o.stats.lag_mode
          << ',' << csv::format_double(o.stats.lag_mean) << ','
          << csv::format_double(o.stats.backward_rho) << '\n';
    }
  }
  {
    nlohmann::json j;
    j["profile"] = summary.profile;
    j["failed_replications"] = summary.failed_count;
    j["config"] = summary.config;
    nlohmann::json cells = nlohmann::json::array();
    for (int size : summary.sizes)
      for (int metric = 1; metric <= 5; ++metric)
        for (int k : summary.top_k_groups)
          cells.push_back({{"size", size},
                           {"metric", metric},
                           {"k", k},
                           {"probability", summary.probability(size, metric, k)}});
    j["identification_probability"] = cells;
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& o : summary.outcomes)
      if (o.failed)
        fails.push_back({{"size", o.size},
                         {"replication", o.replication},
                         {"error", o.error}});
    j["failures"] = fails;
    std::ofstream out(out_dir / "summary.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary.json");
    out << j.dump(2) << '\n';
  }
}

}  // namespace citnet::experiment
