#include "nacsc/nac.hpp"

#include <cmath>

#include "nacsc/errors.hpp"

namespace nacsc {

std::vector<double> alpha_weights(const Graph& g, double c) {
  const int n = g.node_count();
  if (n < 2) throw DomainError("alpha_weights requires at least 2 nodes");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("alpha tuning constant must lie in (0, 1)");
  const double dbar = average_degree(g);
  const double log_n = std::log(static_cast<double>(n));
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    alpha[static_cast<std::size_t>(i)] = c * dbar / (static_cast<double>(g.degree(i)) / log_n + 1.0);
  return alpha;
}

NacMatrix build_nac(const Graph& g, const Eigen::MatrixXd& covariates, double c) {
  const int n = g.node_count();
  if (covariates.rows() != n)
    throw DimensionError("covariate matrix has " + std::to_string(covariates.rows()) +
                         " rows, graph has " + std::to_string(n) + " nodes");
  NacMatrix out;
  out.alpha = alpha_weights(g, c);
  out.values.resize(n, covariates.cols());
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd acc = out.alpha[static_cast<std::size_t>(i)] * covariates.row(i);
    for (int j : g.neighbors(i)) acc += covariates.row(j);
    out.values.row(i) = acc;
  }
  return out;
}

}  // namespace nacsc
