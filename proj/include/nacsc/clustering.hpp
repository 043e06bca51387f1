#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace nacsc {

struct ClusteringResult {
  std::vector<int> labels;   // length n, values in [0, K)
  Eigen::MatrixXd centers;   // K x dim
  double wcss = 0.0;         // within-cluster sum of squared distances
  int restarts_used = 0;
  std::uint64_t best_restart_seed = 0;
  std::vector<double> wcss_history;  // per-Lloyd-iteration wcss of the winning restart
};

// Best-of-`restarts` k-means: each restart is k-means++ seeding followed by Lloyd
// iterations (assignment fixed point or 300 iterations), with empty-cluster repair by
// stealing the point farthest from its center. Ties in assignment break toward the
// lower center index; the winner is the lowest wcss, ties toward the lower restart index.
ClusteringResult kmeans(const Eigen::MatrixXd& points, int k, int restarts = 20,
                        std::uint64_t seed = 0);

struct AlignmentReport {
  std::vector<int> permutation;  // permutation[j] = truth label assigned to predicted label j
  double error_rate = 0.0;
  Eigen::MatrixXi confusion;  // confusion(t, j) = #{i : truth(i)=t, permutation[pred(i)]=j}
};

// Minimizes the mismatch count over all K! relabelings of the predicted labels
// (exhaustive; K <= 10). Ties prefer the lexicographically smallest permutation.
AlignmentReport align_and_error(const std::vector<int>& pred, const std::vector<int>& truth,
                                int k);

// Mismatch rate restricted to `subset`, under the permutation fitted on the FULL label
// vectors. The subset must be non-empty with indices in [0, n).
double error_on_subset(const std::vector<int>& pred, const std::vector<int>& truth, int k,
                       const std::vector<int>& subset);

}  // namespace nacsc
