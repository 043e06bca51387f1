#include "nacsc/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "nacsc/errors.hpp"
#include "nacsc/rng.hpp"

namespace nacsc {

namespace {

struct SingleRun {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double wcss = 0.0;
  std::vector<double> history;
};

void plus_plus_init(const Eigen::MatrixXd& points, int k, Rng& rng, Eigen::MatrixXd& centers) {
  const int n = static_cast<int>(points.rows());
  int first = std::min(n - 1, static_cast<int>(canonical_unit(rng) * n));
  centers.row(0) = points.row(first);
  Eigen::VectorXd d2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick;
    if (total > 0.0) {
      const double target = canonical_unit(rng) * total;
      double cum = 0.0;
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        cum += d2(i);
        if (cum > target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = std::min(n - 1, static_cast<int>(canonical_unit(rng) * n));
    }
    centers.row(c) = points.row(pick);
    d2 = d2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
}

SingleRun lloyd(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const int n = static_cast<int>(points.rows());
  const int dim = static_cast<int>(points.cols());
  constexpr int kMaxIters = 300;

  SingleRun run;
  run.centers.resize(k, dim);
  plus_plus_init(points, k, rng, run.centers);
  run.labels.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);

  for (int iter = 0; iter < kMaxIters; ++iter) {
    // Assignment: nearest center, ties toward the lower center index.
    bool changed = false;
    std::fill(sizes.begin(), sizes.end(), 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (points.row(i) - run.centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (points.row(i) - run.centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.labels[static_cast<std::size_t>(i)] != best) {
        run.labels[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
      ++sizes[static_cast<std::size_t>(best)];
    }

    // Empty-cluster repair: each empty cluster steals the point farthest from its
    // current center among clusters that still have at least two members.
    bool repaired = false;
    for (int c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] > 0) continue;
      int steal = -1;
      double worst = -1.0;
      for (int i = 0; i < n; ++i) {
        const int li = run.labels[static_cast<std::size_t>(i)];
        if (sizes[static_cast<std::size_t>(li)] < 2) continue;
        const double d = (points.row(i) - run.centers.row(li)).squaredNorm();
        if (d > worst) {
          worst = d;
          steal = i;
        }
      }
      // n >= k guarantees a donor exists while any cluster is empty.
      --sizes[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(steal)])];
      run.labels[static_cast<std::size_t>(steal)] = c;
      ++sizes[static_cast<std::size_t>(c)];
      repaired = true;
    }

    if (!changed && !repaired) break;

    // Update step.
    run.centers.setZero();
    for (int i = 0; i < n; ++i) run.centers.row(run.labels[static_cast<std::size_t>(i)]) += points.row(i);
    for (int c = 0; c < k; ++c) run.centers.row(c) /= static_cast<double>(sizes[static_cast<std::size_t>(c)]);

    double wcss = 0.0;
    for (int i = 0; i < n; ++i)
      wcss += (points.row(i) - run.centers.row(run.labels[static_cast<std::size_t>(i)])).squaredNorm();
    run.wcss = wcss;
    run.history.push_back(wcss);
  }
  return run;
}

}  // namespace

ClusteringResult kmeans(const Eigen::MatrixXd& points, int k, int restarts, std::uint64_t seed) {
  const int n = static_cast<int>(points.rows());
  if (k < 1) throw DomainError("k-means requires K >= 1");
  if (n < k)
    throw DomainError("k-means requires at least K points (n=" + std::to_string(n) +
                      ", K=" + std::to_string(k) + ")");
  if (restarts < 1) throw DomainError("k-means requires at least one restart");

  ClusteringResult best;
  bool have_best = false;
  for (int r = 0; r < restarts; ++r) {
    const std::uint64_t restart_seed = seed_combine({seed, static_cast<std::uint64_t>(r)});
    Rng rng(restart_seed);
    SingleRun run = lloyd(points, k, rng);
    if (!have_best || run.wcss < best.wcss) {
      best.labels = std::move(run.labels);
      best.centers = std::move(run.centers);
      best.wcss = run.wcss;
      best.best_restart_seed = restart_seed;
      best.wcss_history = std::move(run.history);
      have_best = true;
    }
  }
  best.restarts_used = restarts;
  return best;
}

namespace {

Eigen::MatrixXi count_matrix(const std::vector<int>& pred, const std::vector<int>& truth, int k) {
  if (pred.size() != truth.size())
    throw DimensionError("label vectors differ in length: " + std::to_string(pred.size()) +
                         " vs " + std::to_string(truth.size()));
  if (pred.empty()) throw DimensionError("empty label vectors");
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(k, k);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const int p = pred[i];
    const int t = truth[i];
    if (p < 0 || p >= k || t < 0 || t >= k)
      throw DomainError("label out of range [0, " + std::to_string(k) + ") at position " +
                        std::to_string(i));
    ++counts(t, p);
  }
  return counts;
}

}  // namespace

AlignmentReport align_and_error(const std::vector<int>& pred, const std::vector<int>& truth,
                                int k) {
  if (k < 1) throw DomainError("alignment requires K >= 1");
  if (k > 10)
    throw DomainError("exhaustive alignment supports K <= 10 (Hungarian matching is future work)");
  const Eigen::MatrixXi counts = count_matrix(pred, truth, k);
  const auto n = static_cast<double>(pred.size());

  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  long best_matches = -1;
  do {
    long matches = 0;
    for (int j = 0; j < k; ++j) matches += counts(perm[static_cast<std::size_t>(j)], j);
    if (matches > best_matches) {
      best_matches = matches;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  AlignmentReport report;
  report.permutation = best_perm;
  report.error_rate = 1.0 - static_cast<double>(best_matches) / n;
  report.confusion = Eigen::MatrixXi::Zero(k, k);
  for (int j = 0; j < k; ++j)
    report.confusion.col(best_perm[static_cast<std::size_t>(j)]) = counts.col(j);
  return report;
}

double error_on_subset(const std::vector<int>& pred, const std::vector<int>& truth, int k,
                       const std::vector<int>& subset) {
  if (subset.empty()) throw DomainError("subset error requires a non-empty subset");
  const AlignmentReport report = align_and_error(pred, truth, k);
  long mismatches = 0;
  for (int idx : subset) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= pred.size())
      throw DomainError("subset index " + std::to_string(idx) + " out of range");
    const std::size_t i = static_cast<std::size_t>(idx);
    if (report.permutation[static_cast<std::size_t>(pred[i])] != truth[i]) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(subset.size());
}

}  // namespace nacsc
