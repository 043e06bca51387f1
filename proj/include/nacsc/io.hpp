#ifndef NACSC_IO_HPP
#define NACSC_IO_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "nacsc/graph.hpp"

namespace nacsc {

// Edge list: one "i j" pair per line, whitespace- or comma-separated,
// '#' marks a comment line. n = max index + 1 unless n_hint is larger.
Graph load_edge_list(const std::string& path, std::optional<int> n_hint = std::nullopt);
void save_edge_list(const Graph& g, const std::string& path);

// CSV of node covariates, one row per node. A non-numeric first row is
// treated as a header and skipped.
Eigen::MatrixXd load_covariates(const std::string& path);
void save_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);

// Label file: one integer per line.
std::vector<int> load_labels(const std::string& path);
void save_labels(const std::vector<int>& labels, const std::string& path);

// Node index set, one index per line (same syntax as labels).
std::vector<int> load_index_list(const std::string& path);

// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

}  // namespace nacsc

#endif
