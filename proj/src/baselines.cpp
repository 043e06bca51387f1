#include "nacsc/baselines.hpp"

#include <cmath>
#include <limits>

#include "nacsc/errors.hpp"
#include "nacsc/nac.hpp"

namespace nacsc {

std::string method_name(Method method) {
  switch (method) {
    case Method::kNac: return "nac";
    case Method::kNetRegLaplacian: return "net_reg_laplacian";
    case Method::kCovOnly: return "cov_only";
    case Method::kCovAssisted: return "cov_assisted";
  }
  throw DomainError("unknown method enum value");
}

Method parse_method(const std::string& name) {
  if (name == "nac") return Method::kNac;
  if (name == "net_reg_laplacian") return Method::kNetRegLaplacian;
  if (name == "cov_only") return Method::kCovOnly;
  if (name == "cov_assisted") return Method::kCovAssisted;
  throw ParseError("unknown method '" + name +
                   "' (expected nac, net_reg_laplacian, cov_only, or cov_assisted)");
}

std::vector<double> default_h_grid() {
  return {0.1, std::pow(10.0, -0.5), 1.0, std::pow(10.0, 0.5), 10.0};
}

namespace {

constexpr double kRankCollapseRatio = 1e-10;

MethodResult cluster_embedding(const RowNormalizedEmbedding& rows, const Eigen::VectorXd& spectrum,
                               int k, const BaselineConfig& cfg, bool degenerate) {
  MethodResult res;
  res.clustering = kmeans(rows.r_hat, k, cfg.restarts, cfg.seed);
  res.zero_rows = rows.zero_rows;
  res.spectrum = spectrum;
  res.degenerate = degenerate || static_cast<int>(rows.zero_rows.size()) == rows.n;
  return res;
}

bool rank_collapsed(const Eigen::VectorXd& singular_values) {
  const double top = singular_values(0);
  return top <= 0.0 || singular_values(singular_values.size() - 1) <= kRankCollapseRatio * top;
}

MethodResult data_matrix_cluster(const Eigen::MatrixXd& m, int k, const BaselineConfig& cfg) {
  const SpectralEmbedding emb = top_k_left_singular(m, k, cfg.spectral);
  const RowNormalizedEmbedding rows = row_normalize(emb);
  return cluster_embedding(rows, emb.singular_values, k, cfg, rank_collapsed(emb.singular_values));
}

// Inverse sqrt of the regularized degrees; zero where the regularized degree is zero
// (only possible on an edgeless graph with tau 0, where the network term vanishes).
Eigen::VectorXd laplacian_scaling(const Graph& g, double tau) {
  const int n = g.node_count();
  Eigen::VectorXd dinv(n);
  for (int i = 0; i < n; ++i) {
    const double d = static_cast<double>(g.degree(i)) + tau;
    dinv(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  return dinv;
}

double resolve_tau(const Graph& g, const BaselineConfig& cfg) {
  if (cfg.tau_reg < 0.0) return average_degree(g);
  if (cfg.tau_reg == 0.0 && g.edge_count() > 0)
    throw DomainError("tau_reg must be positive on a non-empty graph");
  return cfg.tau_reg;
}

// Applies D_tau^{-1/2} A D_tau^{-1/2} to a block, accumulating neighbors in ascending
// index order for reproducibility.
Eigen::MatrixXd laplacian_apply(const Graph& g, const Eigen::VectorXd& dinv,
                                const Eigen::MatrixXd& q) {
  const int n = g.node_count();
  Eigen::MatrixXd w = dinv.asDiagonal() * q;
  Eigen::MatrixXd out(n, q.cols());
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(q.cols());
    for (int j : g.neighbors(i)) acc += w.row(j);
    out.row(i) = dinv(i) * acc;
  }
  return out;
}

}  // namespace

MethodResult nac_cluster(const Graph& g, const Eigen::MatrixXd& x, int k,
                         const BaselineConfig& cfg) {
  const NacMatrix nac = build_nac(g, x, cfg.weight_c);
  return data_matrix_cluster(nac.values, k, cfg);
}

MethodResult cov_only(const Eigen::MatrixXd& x, int k, const BaselineConfig& cfg) {
  return data_matrix_cluster(x, k, cfg);
}

MethodResult net_reg_laplacian(const Graph& g, int k, const BaselineConfig& cfg) {
  const int n = g.node_count();
  if (g.edge_count() == 0) {
    SpectralEmbedding emb;
    emb.n = n;
    emb.k = k;
    emb.xi_hat = Eigen::MatrixXd::Zero(n, k);
    emb.singular_values = Eigen::VectorXd::Zero(k);
    const RowNormalizedEmbedding rows = row_normalize(emb);
    return cluster_embedding(rows, Eigen::VectorXd::Zero(k), k, cfg, true);
  }
  const double tau = resolve_tau(g, cfg);
  const Eigen::VectorXd dinv = laplacian_scaling(g, tau);
  auto apply = [&](const Eigen::MatrixXd& q) -> Eigen::MatrixXd {
    return laplacian_apply(g, dinv, q) + q;  // identity shift keeps the operator PSD
  };
  SpectralOptions lap_opts = cfg.spectral;
  lap_opts.ritz_tol = cfg.laplacian_ritz_tol;
  lap_opts.residual_limit = cfg.laplacian_residual_limit;
  const EigenPairs pairs = top_k_eigenpairs_sym(apply, n, k, lap_opts);
  SpectralEmbedding emb;
  emb.n = n;
  emb.k = k;
  emb.xi_hat = pairs.vectors;
  emb.singular_values = pairs.values.cwiseMax(0.0);
  emb.sweeps = pairs.sweeps;
  emb.residual = pairs.residual;
  const RowNormalizedEmbedding rows = row_normalize(emb);
  return cluster_embedding(rows, pairs.values.array() - 1.0, k, cfg, false);
}

MethodResult cov_assisted(const Graph& g, const Eigen::MatrixXd& x, int k,
                          const BaselineConfig& cfg, const std::vector<int>* truth) {
  const int n = g.node_count();
  if (x.rows() != n)
    throw DimensionError("covariate matrix has " + std::to_string(x.rows()) +
                         " rows, graph has " + std::to_string(n) + " nodes");
  if (x.cols() < 1) throw DimensionError("cov_assisted requires covariates");
  if (cfg.oracle_tuning && truth == nullptr)
    throw DomainError("oracle tuning requires ground-truth labels");
  std::vector<double> grid = cfg.h_grid.empty() ? default_h_grid() : cfg.h_grid;

  const double sigma1 = top_k_left_singular(x, 1, cfg.spectral).singular_values(0);
  const Eigen::MatrixXd xn = sigma1 > 1e-300 ? (x / sigma1).eval() : x;
  const double tau = resolve_tau(g, cfg);
  const Eigen::VectorXd dinv = laplacian_scaling(g, tau);

  MethodResult best;
  bool have_best = false;
  double best_score = 0.0;
  SpectralOptions lap_opts = cfg.spectral;
  lap_opts.ritz_tol = cfg.laplacian_ritz_tol;
  lap_opts.residual_limit = cfg.laplacian_residual_limit;
  for (double h : grid) {
    auto apply = [&](const Eigen::MatrixXd& q) -> Eigen::MatrixXd {
      return laplacian_apply(g, dinv, q) + q + h * (xn * (xn.transpose() * q));
    };
    const EigenPairs pairs = top_k_eigenpairs_sym(apply, n, k, lap_opts);
    SpectralEmbedding emb;
    emb.n = n;
    emb.k = k;
    emb.xi_hat = pairs.vectors;
    emb.singular_values = pairs.values.cwiseMax(0.0);
    emb.sweeps = pairs.sweeps;
    emb.residual = pairs.residual;
    const RowNormalizedEmbedding rows = row_normalize(emb);
    MethodResult res = cluster_embedding(rows, pairs.values.array() - 1.0, k, cfg, false);
    res.chosen_h = h;
    const double score = cfg.oracle_tuning
                             ? align_and_error(res.clustering.labels, *truth, k).error_rate
                             : res.clustering.wcss;
    if (!have_best || score < best_score) {
      best = std::move(res);
      best_score = score;
      have_best = true;
    }
  }
  return best;
}

MethodResult run_method(Method method, const Graph& g, const Eigen::MatrixXd& x, int k,
                        const BaselineConfig& cfg, const std::vector<int>* truth) {
  switch (method) {
    case Method::kNac: return nac_cluster(g, x, k, cfg);
    case Method::kNetRegLaplacian: return net_reg_laplacian(g, k, cfg);
    case Method::kCovOnly: return cov_only(x, k, cfg);
    case Method::kCovAssisted: return cov_assisted(g, x, k, cfg, truth);
  }
  throw DomainError("unknown method enum value");
}

}  // namespace nacsc
