#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nacsc/clustering.hpp"
#include "nacsc/graph.hpp"
#include "nacsc/spectral.hpp"

namespace nacsc {

enum class Method { kNac, kNetRegLaplacian, kCovOnly, kCovAssisted };

// CLI id strings: nac, net_reg_laplacian, cov_only, cov_assisted.
std::string method_name(Method method);
Method parse_method(const std::string& name);  // ParseError on unknown ids

struct BaselineConfig {
  double tau_reg = -1.0;       // Laplacian regularizer; < 0 means "use the average degree"
  std::vector<double> h_grid;  // cov_assisted weights; empty means the default 5-point log grid
  int restarts = 20;
  std::uint64_t seed = 0;
  bool oracle_tuning = false;  // cov_assisted: pick h by true error instead of wcss
  double weight_c = 0.5;       // self-weight constant for the adjusted covariates
  SpectralOptions spectral;
  // Tolerances for the Laplacian-backed eigensolves.  A Laplacian's K-th
  // eigenvalue can sit in the spectral bulk (nothing ties community count to a
  // spectral gap), where eigenvalue spacing ~1e-4 of the norm keeps the Ritz
  // drift above any tighter threshold for thousands of sweeps and the block
  // residual stalled at that spacing, while the basis only rotates within the
  // near-degenerate subspace; 1e-6 / 1e-3 of the operator norm are far below
  // anything k-means on normalized rows can sense.  The pure-SVD paths keep
  // the tighter defaults in `spectral`.
  double laplacian_ritz_tol = 1e-6;
  double laplacian_residual_limit = 1e-3;
};

std::vector<double> default_h_grid();  // {0.1, 10^-1/2, 1, 10^1/2, 10}

struct MethodResult {
  ClusteringResult clustering;
  std::vector<int> zero_rows;  // embedding rows that could not be normalized
  Eigen::VectorXd spectrum;    // top-K singular/eigen values of the embedded operator
  bool degenerate = false;     // embedding carried no usable structure
  double chosen_h = std::numeric_limits<double>::quiet_NaN();  // cov_assisted only
};

// Adjusted-covariate spectral clustering: build the adjusted matrix, take its top-K
// left singular vectors, row-normalize, run restarted k-means.
MethodResult nac_cluster(const Graph& g, const Eigen::MatrixXd& x, int k,
                         const BaselineConfig& cfg);

// Network-only: top-K eigenvectors of D_tau^{-1/2} A D_tau^{-1/2} (computed on the
// identity-shifted operator), row-normalize, k-means. An edgeless graph yields an
// all-zero embedding flagged degenerate.
MethodResult net_reg_laplacian(const Graph& g, int k, const BaselineConfig& cfg);

// Covariate-only: top-K left singular vectors of X, row-normalize, k-means.
MethodResult cov_only(const Eigen::MatrixXd& x, int k, const BaselineConfig& cfg);

// Covariate-assisted Laplacian: for each h in the grid, embed L_tau + h * Xn Xn^T with
// Xn = X / sigma_1(X), cluster, then keep the h with the lowest wcss (or the lowest
// true error when cfg.oracle_tuning and truth is given).
MethodResult cov_assisted(const Graph& g, const Eigen::MatrixXd& x, int k,
                          const BaselineConfig& cfg, const std::vector<int>* truth = nullptr);

// Dispatch by method id; x may be empty for net_reg_laplacian, the graph is unused for
// cov_only. Truth is only consulted by cov_assisted's oracle tuning.
MethodResult run_method(Method method, const Graph& g, const Eigen::MatrixXd& x, int k,
                        const BaselineConfig& cfg, const std::vector<int>* truth = nullptr);

}  // namespace nacsc
