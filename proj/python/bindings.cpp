#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nacsc/baselines.hpp"
#include "nacsc/clustering.hpp"
#include "nacsc/dcsbm.hpp"
#include "nacsc/errors.hpp"
#include "nacsc/graph.hpp"
#include "nacsc/nac.hpp"
#include "nacsc/spectral.hpp"

namespace py = pybind11;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

nacsc::CovariateCase parse_case(const std::string& name) {
  if (name == "low" || name == "low_dim") return nacsc::CovariateCase::kLowDim;
  if (name == "high" || name == "high_dim") return nacsc::CovariateCase::kHighDim;
  throw nacsc::ParseError("unknown covariate case '" + name + "' (use low_dim or high_dim)");
}

nacsc::BaselineConfig make_config(int restarts, std::uint64_t seed, bool oracle_tuning,
                                  double weight_c, double tau_reg,
                                  const std::vector<double>& h_grid) {
  nacsc::BaselineConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  cfg.oracle_tuning = oracle_tuning;
  cfg.weight_c = weight_c;
  cfg.tau_reg = tau_reg;
  cfg.h_grid = h_grid;
  return cfg;
}

py::dict method_result_dict(const nacsc::MethodResult& r) {
  py::dict out;
  out["labels"] = r.clustering.labels;
  out["centers"] = r.clustering.centers;
  out["wcss"] = r.clustering.wcss;
  out["restarts_used"] = r.clustering.restarts_used;
  out["zero_rows"] = r.zero_rows;
  out["spectrum"] = r.spectrum;
  out["degenerate"] = r.degenerate;
  out["chosen_h"] = r.chosen_h;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral clustering on network-adjusted covariates: core operations";

  // Most-derived translators must run before the base handler, so the base is
  // registered first (translation tries the newest registration first).
  py::register_exception<nacsc::Error>(m, "NacscError", PyExc_RuntimeError);
  py::register_exception<nacsc::ParseError>(m, "NacscParseError", PyExc_ValueError);
  py::register_exception<nacsc::DimensionError>(m, "NacscDimensionError", PyExc_ValueError);
  py::register_exception<nacsc::DomainError>(m, "NacscDomainError", PyExc_ValueError);
  py::register_exception<nacsc::ConvergenceError>(m, "NacscConvergenceError", PyExc_RuntimeError);
  py::register_exception<nacsc::ClassificationError>(m, "NacscClassificationError",
                                                     PyExc_RuntimeError);
  py::register_exception<nacsc::RankDeficiencyError>(m, "NacscRankDeficiencyError",
                                                     PyExc_RuntimeError);

  m.def(
      "adjusted_covariates",
      [](const EdgeList& edges, const Eigen::MatrixXd& x, double c) {
        const nacsc::Graph g(static_cast<int>(x.rows()), edges);
        nacsc::NacMatrix nac = nacsc::build_nac(g, x, c);
        return py::make_tuple(std::move(nac.values), std::move(nac.alpha));
      },
      py::arg("edges"), py::arg("x"), py::arg("c") = 0.5,
      "Network-adjusted covariates: row i is alpha_i * x_i plus the sum of x_j over "
      "neighbors j. Returns (Y, alpha). Node count is taken from x's row count.");

  m.def(
      "embed",
      [](const Eigen::MatrixXd& y, int k, std::uint64_t seed) {
        nacsc::SpectralOptions opts;
        opts.seed = seed;
        const nacsc::SpectralEmbedding emb = nacsc::top_k_left_singular(y, k, opts);
        py::dict out;
        out["xi"] = emb.xi_hat;
        out["singular_values"] = emb.singular_values;
        out["sweeps"] = emb.sweeps;
        out["residual"] = emb.residual;
        return out;
      },
      py::arg("y"), py::arg("k"), py::arg("seed") = 12345,
      "Top-K left singular vectors of a dense matrix (subspace iteration on Y Y^T).");

  m.def(
      "row_normalize",
      [](const Eigen::MatrixXd& xi) {
        nacsc::SpectralEmbedding emb;
        emb.n = static_cast<int>(xi.rows());
        emb.k = static_cast<int>(xi.cols());
        emb.xi_hat = xi;
        const nacsc::RowNormalizedEmbedding rows = nacsc::row_normalize(emb);
        return py::make_tuple(rows.r_hat, rows.zero_rows);
      },
      py::arg("xi"),
      "Scale each row to unit norm; rows below the zero threshold are left at zero and "
      "reported in the second element.");

  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
        const nacsc::ClusteringResult r = nacsc::kmeans(points, k, restarts, seed);
        py::dict out;
        out["labels"] = r.labels;
        out["centers"] = r.centers;
        out["wcss"] = r.wcss;
        out["restarts_used"] = r.restarts_used;
        return out;
      },
      py::arg("points"), py::arg("k"), py::arg("restarts") = 20, py::arg("seed") = 0,
      "Best-of-restarts k-means (k-means++ seeding, Lloyd iterations).");

  m.def(
      "cluster",
      [](const std::string& method, const EdgeList& edges, std::optional<Eigen::MatrixXd> x,
         int k, std::optional<int> n, int restarts, std::uint64_t seed, bool oracle_tuning,
         std::optional<std::vector<int>> truth, double weight_c, double tau_reg,
         std::vector<double> h_grid) {
        const nacsc::Method parsed = nacsc::parse_method(method);
        int node_count = 0;
        if (n)
          node_count = *n;
        else if (x)
          node_count = static_cast<int>(x->rows());
        else
          throw nacsc::DomainError("pass n when no covariate matrix is given");
        const nacsc::Graph g(node_count, edges);
        const Eigen::MatrixXd covariates = x ? *x : Eigen::MatrixXd();
        const nacsc::BaselineConfig cfg =
            make_config(restarts, seed, oracle_tuning, weight_c, tau_reg, h_grid);
        const nacsc::MethodResult r = nacsc::run_method(
            parsed, g, covariates, k, cfg, truth ? &*truth : nullptr);
        return method_result_dict(r);
      },
      py::arg("method"), py::arg("edges"), py::arg("x"), py::arg("k"),
      py::arg("n") = std::nullopt, py::arg("restarts") = 20, py::arg("seed") = 0,
      py::arg("oracle_tuning") = false, py::arg("truth") = std::nullopt,
      py::arg("weight_c") = 0.5, py::arg("tau_reg") = -1.0,
      py::arg("h_grid") = std::vector<double>{},
      "Run one community-detection method: 'nac', 'net_reg_laplacian', 'cov_only', or "
      "'cov_assisted'. x may be None for net_reg_laplacian (then pass n).");

  m.def(
      "align_error",
      [](const std::vector<int>& pred, const std::vector<int>& truth, int k) {
        const nacsc::AlignmentReport rep = nacsc::align_and_error(pred, truth, k);
        py::dict out;
        out["error"] = rep.error_rate;
        out["permutation"] = rep.permutation;
        out["confusion"] = rep.confusion;
        return out;
      },
      py::arg("pred"), py::arg("truth"), py::arg("k"),
      "Misclassification proportion minimized over all K! relabelings.");

  m.def("subset_error", &nacsc::error_on_subset, py::arg("pred"), py::arg("truth"),
        py::arg("k"), py::arg("subset"),
        "Mismatch rate on a node subset under the permutation fitted on the full vectors.");

  m.def(
      "generate_benchmark",
      [](const std::string& dim_case, int n, double p_offdiag, double mu, double gamma,
         std::uint64_t seed) {
        const nacsc::ModelParams params =
            nacsc::benchmark_params(parse_case(dim_case), n, p_offdiag, mu, gamma, seed);
        const nacsc::GeneratedInstance inst = nacsc::generate(params);
        const std::vector<std::pair<int, int>> edges = inst.graph.edges();
        Eigen::MatrixXi edge_matrix(static_cast<Eigen::Index>(edges.size()), 2);
        for (Eigen::Index e = 0; e < edge_matrix.rows(); ++e) {
          edge_matrix(e, 0) = edges[static_cast<std::size_t>(e)].first;
          edge_matrix(e, 1) = edges[static_cast<std::size_t>(e)].second;
        }
        py::dict out;
        out["n"] = params.n;
        out["k"] = params.k;
        out["edges"] = edge_matrix;
        out["covariates"] = inst.covariates;
        out["labels"] = inst.truth;
        out["theta"] = inst.theta;
        out["drawn_distribution"] = inst.drawn_distribution;
        out["misspecified"] = inst.misspecified;
        out["clamped_probabilities"] = inst.clamped_probabilities;
        return out;
      },
      py::arg("dim_case"), py::arg("n"), py::arg("p_offdiag") = 0.5, py::arg("mu") = 0.5,
      py::arg("gamma") = 0.1, py::arg("seed") = 0,
      "Draw one benchmark instance of the degree-corrected blockmodel with covariates "
      "(K=3, two dense communities and one sparse).");

  m.def("default_h_grid", &nacsc::default_h_grid,
        "Default 5-point log-spaced weight grid for cov_assisted.");

  m.attr("__version__") = "0.1.0";
}
