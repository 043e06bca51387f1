// Independent reference implementations used to cross-check the library.
// Everything here favors clarity over speed: dense factorizations, exhaustive
// enumeration, and scalar loops, so that agreement with the library is evidence
// and not tautology.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nacsc/graph.hpp"

namespace testoracle {

// Top-k left singular vectors and singular values via Eigen's dense Jacobi SVD.
struct DenseSvd {
  Eigen::MatrixXd u;  // n x k
  Eigen::VectorXd s;  // k
};

inline DenseSvd dense_top_k_svd(const Eigen::MatrixXd& m, int k) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  DenseSvd out;
  out.u = svd.matrixU().leftCols(k);
  out.s = svd.singularValues().head(k);
  return out;
}

// Largest principal angle between the column spaces of a and b (orthonormal
// columns assumed), measured as the spectral norm of the projector difference,
// which equals sin(theta_max).
inline double max_principal_angle_sin(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd diff = a * a.transpose() - b * b.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
  return svd.singularValues()(0);
}

// Within-cluster sum of squares for a fixed assignment, centers at cluster means.
inline double assignment_wcss(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                              int k) {
  const int n = static_cast<int>(points.rows());
  Eigen::MatrixXd centers = Eigen::MatrixXd::Zero(k, points.cols());
  std::vector<int> counts(k, 0);
  for (int i = 0; i < n; ++i) {
    centers.row(labels[i]) += points.row(i);
    ++counts[labels[i]];
  }
  for (int c = 0; c < k; ++c)
    if (counts[c] > 0) centers.row(c) /= counts[c];
  double wcss = 0.0;
  for (int i = 0; i < n; ++i) wcss += (points.row(i) - centers.row(labels[i])).squaredNorm();
  return wcss;
}

// Exhaustive minimum of the k-means objective over all k^n assignments.
inline double brute_force_best_wcss(const Eigen::MatrixXd& points, int k) {
  const int n = static_cast<int>(points.rows());
  if (n > 12) throw std::runtime_error("brute force oracle limited to n <= 12");
  std::vector<int> labels(n, 0);
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t total = [&] {
    std::uint64_t t = 1;
    for (int i = 0; i < n; ++i) t *= static_cast<std::uint64_t>(k);
    return t;
  }();
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(c % k);
      c /= k;
    }
    best = std::min(best, assignment_wcss(points, labels, k));
  }
  return best;
}

// Scalar triple-loop construction of the adjusted-covariate matrix: explicit
// dense adjacency, explicit degree/average-degree sums, one scalar accumulation
// per (i, j, column) triple.
inline Eigen::MatrixXd triple_loop_adjusted_covariates(const nacsc::Graph& g,
                                                       const Eigen::MatrixXd& x, double c) {
  const int n = g.node_count();
  const int p = static_cast<int>(x.cols());
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) {
    a[e.first][e.second] = 1.0;
    a[e.second][e.first] = 1.0;
  }
  std::vector<double> deg(n, 0.0);
  double dbar = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) deg[i] += a[i][j];
    dbar += deg[i];
  }
  dbar /= n;
  const double logn = std::log(static_cast<double>(n));
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, p);
  for (int i = 0; i < n; ++i) {
    const double alpha = c * dbar / (deg[i] / logn + 1.0);
    for (int col = 0; col < p; ++col) {
      double acc = alpha * x(i, col);
      for (int j = 0; j < n; ++j) acc += a[i][j] * x(j, col);
      y(i, col) = acc;
    }
  }
  return y;
}

// Direct recount of subset mismatches under a fixed label mapping.
inline double recount_subset_error(const std::vector<int>& pred, const std::vector<int>& truth,
                                   const std::vector<int>& mapping,
                                   const std::vector<int>& subset) {
  int bad = 0;
  for (int i : subset)
    if (mapping[pred[static_cast<std::size_t>(i)]] != truth[static_cast<std::size_t>(i)]) ++bad;
  return static_cast<double>(bad) / static_cast<double>(subset.size());
}

}  // namespace testoracle
