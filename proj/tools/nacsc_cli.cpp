// Command line front end: generate benchmark instances, cluster attributed graphs,
// evaluate predicted labels, and run the simulation sweeps.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nacsc/baselines.hpp"
#include "nacsc/clustering.hpp"
#include "nacsc/dcsbm.hpp"
#include "nacsc/errors.hpp"
#include "nacsc/graph.hpp"
#include "nacsc/harness.hpp"
#include "nacsc/io.hpp"

namespace {

struct GenerateArgs {
  std::string out_dir;
  std::string dim = "low";
  int n = 1000;
  double p_offdiag = 0.5;
  double mu1 = 0.3;
  double mu2 = 0.5;
  double gamma = 0.1;
  std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& args) {
  const nacsc::CovariateCase dim_case = nacsc::parse_dim_case(args.dim);
  const double mu = dim_case == nacsc::CovariateCase::kHighDim ? args.mu1 : args.mu2;
  const nacsc::ModelParams params =
      nacsc::benchmark_params(dim_case, args.n, args.p_offdiag, mu, args.gamma, args.seed);
  const nacsc::GeneratedInstance inst = nacsc::generate(params);
  nacsc::save_instance(inst, params, args.out_dir);
  std::cout << "out_dir " << args.out_dir << "\n"
            << "n " << params.n << "\n"
            << "k " << params.k << "\n"
            << "p " << params.covariate_dim() << "\n"
            << "edges " << inst.graph.edge_count() << "\n"
            << "misspecified " << inst.misspecified.size() << "\n"
            << "seed " << args.seed << "\n";
  return 0;
}

struct ClusterArgs {
  std::string graph_path;
  std::string cov_path;
  std::string out_path = "labels.txt";
  std::string method = "nac";
  int k = 0;
  int restarts = 20;
  std::uint64_t seed = 0;
  double tau_reg = -1.0;
  double weight_c = 0.5;
  std::vector<double> h_grid;
};

int run_cluster(const ClusterArgs& args) {
  const nacsc::Method method = nacsc::parse_method(args.method);
  const bool needs_covariates = method != nacsc::Method::kNetRegLaplacian;
  if (needs_covariates && args.cov_path.empty())
    throw nacsc::DomainError("method '" + args.method + "' requires --covariates");

  Eigen::MatrixXd x(0, 0);
  if (needs_covariates) x = nacsc::load_covariates(args.cov_path);

  std::optional<int> n_hint;
  if (needs_covariates) n_hint = static_cast<int>(x.rows());
  const nacsc::Graph g = nacsc::load_edge_list(args.graph_path, n_hint);
  if (needs_covariates && x.rows() != g.node_count())
    throw nacsc::DimensionError("graph has " + std::to_string(g.node_count()) +
                                " nodes but covariates have " + std::to_string(x.rows()) +
                                " rows");

  nacsc::BaselineConfig cfg;
  cfg.restarts = args.restarts;
  cfg.seed = args.seed;
  cfg.tau_reg = args.tau_reg;
  cfg.weight_c = args.weight_c;
  cfg.h_grid = args.h_grid;

  const auto t0 = std::chrono::steady_clock::now();
  const nacsc::MethodResult res = nacsc::run_method(method, g, x, args.k, cfg);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nacsc::save_labels(res.clustering.labels, args.out_path);

  std::cout << "n " << g.node_count() << "\n"
            << "p " << x.cols() << "\n"
            << "k " << args.k << "\n"
            << "method " << nacsc::method_name(method) << "\n"
            << "wcss " << nacsc::format_double(res.clustering.wcss) << "\n"
            << "restarts " << args.restarts << "\n"
            << "zero_rows " << res.zero_rows.size() << "\n"
            << "degenerate " << (res.degenerate ? 1 : 0) << "\n";
  if (!std::isnan(res.chosen_h)) std::cout << "chosen_h " << nacsc::format_double(res.chosen_h) << "\n";
  std::cout << "wall_seconds " << nacsc::format_double(wall) << "\n"
            << "labels " << args.out_path << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string pred_path;
  std::string truth_path;
  std::string subset_path;
  int k = 0;
};

int run_evaluate(const EvaluateArgs& args) {
  const std::vector<int> pred = nacsc::load_labels(args.pred_path);
  const std::vector<int> truth = nacsc::load_labels(args.truth_path);
  const nacsc::AlignmentReport report = nacsc::align_and_error(pred, truth, args.k);
  std::cout << "n " << truth.size() << "\n"
            << "k " << args.k << "\n"
            << "error " << nacsc::format_double(report.error_rate) << "\n";
  if (!args.subset_path.empty()) {
    const std::vector<int> subset = nacsc::load_index_list(args.subset_path);
    std::cout << "subset_size " << subset.size() << "\n"
              << "subset_error "
              << nacsc::format_double(nacsc::error_on_subset(pred, truth, args.k, subset)) << "\n";
  }
  std::cout << "confusion\n";
  for (int t = 0; t < args.k; ++t) {
    for (int j = 0; j < args.k; ++j) std::cout << (j ? " " : "") << report.confusion(t, j);
    std::cout << "\n";
  }
  return 0;
}

struct SimulateArgs {
  std::string study = "misspec";
  std::string dim = "low";
  std::string profile = "desk";
  std::string out_prefix = "sweep";
  std::vector<double> values;
  std::vector<std::string> methods;
  int n = 0;
  int reps = 0;
  int threads = 0;
  int restarts = 20;
  std::uint64_t seed = 1;
  bool wcss_tuning = false;
  int audit = 5;
};

int run_simulate(const SimulateArgs& args) {
  nacsc::SweepConfig cfg;
  cfg.study = nacsc::parse_study(args.study);
  cfg.dim_case = nacsc::parse_dim_case(args.dim);
  cfg.profile = nacsc::parse_profile(args.profile);
  cfg.values = args.values;
  cfg.n = args.n;
  cfg.reps = args.reps;
  cfg.threads = args.threads;
  cfg.restarts = args.restarts;
  cfg.base_seed = args.seed;
  cfg.oracle_tuning = !args.wcss_tuning;
  if (!args.methods.empty()) {
    cfg.methods.clear();
    for (const std::string& name : args.methods) cfg.methods.push_back(nacsc::parse_method(name));
  }

  const std::vector<nacsc::SimulationRecord> records = nacsc::run_sweep(cfg);
  const std::filesystem::path prefix_dir = std::filesystem::path(args.out_prefix).parent_path();
  if (!prefix_dir.empty()) std::filesystem::create_directories(prefix_dir);
  const std::string records_path = args.out_prefix + "_records.csv";
  const std::string aggregate_path = args.out_prefix + "_aggregate.csv";
  const std::string timing_path = args.out_prefix + "_timing.csv";
  nacsc::write_records_csv(records, records_path);
  nacsc::write_aggregate_csv(records, aggregate_path);
  nacsc::write_timing_csv(records, timing_path);

  // Spot audit: re-run a few recorded jobs from scratch and require identical errors.
  std::vector<std::size_t> ok_rows;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].ok) ok_rows.push_back(i);
  std::mt19937_64 pick(args.seed);
  int audited = 0;
  for (int a = 0; a < args.audit && !ok_rows.empty(); ++a) {
    const std::size_t row = ok_rows[pick() % ok_rows.size()];
    const nacsc::SimulationRecord& rec = records[row];
    const std::vector<nacsc::SimulationRecord> redo =
        nacsc::run_single(cfg, rec.value, rec.rep);
    bool found = false;
    for (const nacsc::SimulationRecord& r : redo) {
      if (r.method != rec.method) continue;
      found = true;
      if (!r.ok || r.overall_error != rec.overall_error) {
        std::cerr << "audit mismatch: value " << nacsc::format_double(rec.value) << " rep "
                  << rec.rep << " method " << nacsc::method_name(rec.method) << "\n";
        return 3;
      }
    }
    if (!found) {
      std::cerr << "audit failed to reproduce a record\n";
      return 3;
    }
    ++audited;
  }

  long failures = static_cast<long>(records.size() - ok_rows.size());
  std::cout << "records " << records.size() << "\n"
            << "failed " << failures << "\n"
            << "audited " << audited << "\n"
            << "records_csv " << records_path << "\n"
            << "aggregate_csv " << aggregate_path << "\n"
            << "timing_csv " << timing_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral clustering on network-adjusted covariates"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "Write a benchmark instance to a directory");
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_option("--dim", gen.dim, "Covariate case: low or high")
      ->check(CLI::IsMember({"low", "high", "low_dim", "high_dim"}));
  generate->add_option("--n", gen.n, "Number of nodes");
  generate->add_option("--p-offdiag", gen.p_offdiag, "Off-diagonal intensity");
  generate->add_option("--mu1", gen.mu1, "High-dim mean strength");
  generate->add_option("--mu2", gen.mu2, "Low-dim mean strength");
  generate->add_option("--gamma", gen.gamma, "Mis-specification weight");
  generate->add_option("--seed", gen.seed, "Generator seed");
  generate->set_config("--config", "", "Flat key=value config file");

  ClusterArgs clu;
  CLI::App* cluster = app.add_subcommand("cluster", "Cluster an attributed graph");
  cluster->add_option("--graph", clu.graph_path, "Edge list path")->required();
  cluster->add_option("--covariates", clu.cov_path, "Covariate CSV path");
  cluster->add_option("--k", clu.k, "Number of communities")->required();
  cluster->add_option("--method", clu.method, "nac, net_reg_laplacian, cov_only, cov_assisted");
  cluster->add_option("--out", clu.out_path, "Labels output path");
  cluster->add_option("--restarts", clu.restarts, "k-means restarts");
  cluster->add_option("--seed", clu.seed, "Clustering seed");
  cluster->add_option("--tau", clu.tau_reg, "Laplacian regularizer (negative = average degree)");
  cluster->add_option("--weight-c", clu.weight_c, "Self-weight constant in (0,1)");
  cluster->add_option("--h-grid", clu.h_grid, "Covariate-assisted weight grid")->delimiter(',');
  cluster->set_config("--config", "", "Flat key=value config file");

  EvaluateArgs eva;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predicted labels against truth");
  evaluate->add_option("--pred", eva.pred_path, "Predicted labels path")->required();
  evaluate->add_option("--truth", eva.truth_path, "Ground-truth labels path")->required();
  evaluate->add_option("--k", eva.k, "Number of communities")->required();
  evaluate->add_option("--subset", eva.subset_path, "Optional node index subset file");

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run a benchmark sweep to CSV");
  simulate->add_option("--study", sim.study, "p_matrix, signal, or misspec");
  simulate->add_option("--dim", sim.dim, "low or high");
  simulate->add_option("--profile", sim.profile, "desk or paper");
  simulate->add_option("--out", sim.out_prefix, "Output file prefix");
  simulate->add_option("--values", sim.values, "Sweep values (default: study range)")
      ->delimiter(',');
  simulate->add_option("--methods", sim.methods, "Comma list of method ids")->delimiter(',');
  simulate->add_option("--n", sim.n, "Nodes per instance (0 = profile default)");
  simulate->add_option("--reps", sim.reps, "Repetitions per value (0 = profile default)");
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = hardware)");
  simulate->add_option("--restarts", sim.restarts, "k-means restarts");
  simulate->add_option("--seed", sim.seed, "Base seed");
  simulate->add_flag("--wcss-tuning", sim.wcss_tuning,
                     "Tune cov_assisted by wcss instead of true error");
  simulate->add_option("--audit", sim.audit, "Records to spot-check after the run");
  simulate->set_config("--config", "", "Flat key=value config file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return run_generate(gen);
    if (*cluster) return run_cluster(clu);
    if (*evaluate) return run_evaluate(eva);
    if (*simulate) return run_simulate(sim);
  } catch (const nacsc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
