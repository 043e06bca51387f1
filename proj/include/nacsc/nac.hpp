#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nacsc/graph.hpp"

namespace nacsc {

// Per-node self weights alpha_i = c * mean_degree / (degree_i / ln(n) + 1).
// Requires n >= 2 and 0 < c < 1.
std::vector<double> alpha_weights(const Graph& g, double c = 0.5);

struct NacMatrix {
  Eigen::MatrixXd values;     // n x p network-adjusted covariates
  std::vector<double> alpha;  // self weights used
};

// Row i of the result is alpha_i * x_i + sum of x_j over neighbors j of i.
NacMatrix build_nac(const Graph& g, const Eigen::MatrixXd& covariates, double c = 0.5);

}  // namespace nacsc
