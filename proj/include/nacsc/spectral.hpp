#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

namespace nacsc {

struct SpectralOptions {
  std::uint64_t seed = 12345;     // seeds the random start block
  double ritz_tol = 1e-10;       // Ritz values settled when each moves less than this (relative to lambda_1) between sweeps
  double residual_limit = 1e-8;  // converged only once ||B V - V Lambda||_F / lambda_1 is below this
  int max_sweeps = 1000;
  int oversample = 2;  // extra block vectors beyond K
};

// Top-K eigenpairs of an n x n symmetric positive-semidefinite operator given as a
// block apply (returns the operator times an n x m block). Subspace iteration with
// QR re-orthonormalization and Rayleigh-Ritz extraction each sweep. Converged when
// the Ritz values have settled AND `residual` = ||B V - V Lambda||_F / lambda_1 is
// at most residual_limit; otherwise a ConvergenceError carries the last residual.
struct EigenPairs {
  Eigen::MatrixXd vectors;  // n x K, orthonormal columns
  Eigen::VectorXd values;   // length K, non-increasing
  int sweeps = 0;
  double residual = 0.0;
};

EigenPairs top_k_eigenpairs_sym(
    const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& apply, int n, int k,
    const SpectralOptions& opts = {});

struct SpectralEmbedding {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd xi_hat;           // n x K, orthonormal columns
  Eigen::VectorXd singular_values;  // length K, non-increasing, >= 0
  int sweeps = 0;
  double residual = 0.0;  // relative to sigma_1^2 (largest eigenvalue of Y Y^T)
};

// Top-K left singular vectors of a dense n x p matrix, via subspace iteration on Y Y^T.
SpectralEmbedding top_k_left_singular(const Eigen::MatrixXd& y, int k,
                                      const SpectralOptions& opts = {});

struct RowNormalizedEmbedding {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd r_hat;       // rows scaled to unit norm, degenerate rows left at zero
  std::vector<int> zero_rows;  // rows whose norm fell below the threshold
};

RowNormalizedEmbedding row_normalize(const SpectralEmbedding& emb, double zero_threshold = 1e-12);

}  // namespace nacsc
