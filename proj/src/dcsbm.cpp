#include "nacsc/dcsbm.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "nacsc/errors.hpp"
#include "nacsc/io.hpp"
#include "nacsc/rng.hpp"
#include "nacsc/spectral.hpp"

namespace nacsc {

Eigen::RowVectorXd ModelParams::mixture_mean(int c) const {
  if (c < 0 || c >= mixture_count())
    throw DomainError("mixture component " + std::to_string(c) + " out of range");
  if (c < means.rows()) return means.row(c);
  return extra_means.row(c - means.rows());
}

void validate(const ModelParams& params) {
  if (params.n < 2) throw DomainError("model requires n >= 2");
  if (params.k < 1) throw DomainError("model requires K >= 1");
  if (params.pi.size() != params.k) throw DimensionError("pi must have length K");
  if (params.pi.minCoeff() < 0.0) throw DomainError("pi entries must be non-negative");
  if (std::abs(params.pi.sum() - 1.0) > 1e-12) throw DomainError("pi must sum to 1");
  if (params.p.rows() != params.k || params.p.cols() != params.k)
    throw DimensionError("P must be K x K");
  if ((params.p - params.p.transpose()).cwiseAbs().maxCoeff() > 1e-15)
    throw DomainError("P must be symmetric");
  if (params.p.minCoeff() < 0.0 || params.p.maxCoeff() > 1.0)
    throw DomainError("P entries must lie in [0, 1]");
  if (static_cast<int>(params.theta_law.size()) != params.k)
    throw DimensionError("theta_law must have one entry per community");
  for (const ThetaLaw& law : params.theta_law)
    if (!(law.lo > 0.0 && law.lo <= law.hi && law.hi <= 1.0))
      throw DomainError("theta laws must satisfy 0 < lo <= hi <= 1");
  if (params.means.rows() != params.k) throw DimensionError("means must have K rows");
  if (params.means.cols() < 1) throw DimensionError("means must have at least one column");
  if (params.extra_means.rows() > 0 && params.extra_means.cols() != params.means.cols())
    throw DimensionError("extra mean rows must match the covariate dimension");
  if (params.cov_noise_sd < 0.0) throw DomainError("covariate noise sd must be >= 0");
  if (params.gamma < 0.0 || params.gamma > 1.0) throw DomainError("gamma must lie in [0, 1]");
  if (params.gamma > 0.0 && params.mixture_count() < 2)
    throw DomainError("gamma > 0 requires at least two mixture components");
}

GeneratedInstance generate(const ModelParams& params) {
  validate(params);
  const int n = params.n;
  const int k = params.k;
  const int p = params.covariate_dim();
  Rng rng(params.seed);

  GeneratedInstance inst;
  inst.truth.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = canonical_unit(rng);
    double cum = 0.0;
    int label = k - 1;
    for (int c = 0; c < k; ++c) {
      cum += params.pi(c);
      if (u < cum) {
        label = c;
        break;
      }
    }
    inst.truth[static_cast<std::size_t>(i)] = label;
  }

  inst.theta.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const ThetaLaw& law = params.theta_law[static_cast<std::size_t>(inst.truth[static_cast<std::size_t>(i)])];
    inst.theta[static_cast<std::size_t>(i)] = law.lo + canonical_unit(rng) * (law.hi - law.lo);
  }

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double prob = inst.theta[static_cast<std::size_t>(i)] * inst.theta[static_cast<std::size_t>(j)] *
                    params.p(inst.truth[static_cast<std::size_t>(i)], inst.truth[static_cast<std::size_t>(j)]);
      if (prob > 1.0) {
        ++inst.clamped_probabilities;
        prob = 1.0;
      }
      if (canonical_unit(rng) < prob) edges.emplace_back(i, j);
    }
  }

  inst.covariates.resize(n, p);
  inst.drawn_distribution.resize(static_cast<std::size_t>(n));
  const int mixtures = params.mixture_count();
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const int own = inst.truth[static_cast<std::size_t>(i)];
    int comp = own;
    if (canonical_unit(rng) >= 1.0 - params.gamma) {
      // Uniformly one of the other mixture components.
      const int other = std::min(mixtures - 2, static_cast<int>(canonical_unit(rng) * (mixtures - 1)));
      comp = other >= own ? other + 1 : other;
    }
    inst.drawn_distribution[static_cast<std::size_t>(i)] = comp;
    if (comp != own) inst.misspecified.push_back(i);
    const Eigen::RowVectorXd mean = params.mixture_mean(comp);
    for (int j = 0; j < p; ++j)
      inst.covariates(i, j) = mean(j) + params.cov_noise_sd * gauss(rng);
  }

  inst.graph = Graph(n, edges);
  return inst;
}

MixtureMeans benchmark_mean_matrix(CovariateCase dim_case, double mu, std::uint64_t seed) {
  constexpr int kMixtures = 5;
  constexpr int kCommunities = 3;
  Rng rng(seed);
  Eigen::MatrixXd all;
  if (dim_case == CovariateCase::kLowDim) {
    const int p = 20;
    all.setZero(kMixtures, p);
    for (int r = 0; r < kMixtures; ++r) {
      for (int j = 0; j < p; ++j) {
        const double bern = canonical_unit(rng) < 0.5 ? 1.0 : 0.0;
        const bool in_block = j >= 5 * r && j <= 5 * r + 3;  // row 4's block falls outside p=20
        all(r, j) = (in_block ? mu : 0.0) + 0.1 * bern;
      }
    }
  } else {
    const int p = 600;
    const int useful_count = p / 10;
    all.setZero(kMixtures, p);
    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    for (int t = 0; t < useful_count; ++t) {
      const int j = t + std::min(p - 1 - t, static_cast<int>(canonical_unit(rng) * (p - t)));
      std::swap(order[static_cast<std::size_t>(t)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<bool> useful(static_cast<std::size_t>(p), false);
    for (int t = 0; t < useful_count; ++t) useful[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = true;
    for (int r = 0; r < kMixtures; ++r)
      for (int j = 0; j < p; ++j)
        if (useful[static_cast<std::size_t>(j)])
          all(r, j) = mu * (canonical_unit(rng) < 0.5 ? 1.0 : 0.0);
  }
  MixtureMeans out;
  out.community = all.topRows(kCommunities);
  out.extra = all.bottomRows(kMixtures - kCommunities);
  return out;
}

ModelParams benchmark_params(CovariateCase dim_case, int n, double p_offdiag, double mu,
                             double gamma, std::uint64_t seed) {
  ModelParams mp;
  mp.n = n;
  mp.k = 3;
  mp.pi = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  mp.p = Eigen::MatrixXd::Constant(3, 3, p_offdiag);
  mp.p.diagonal().setOnes();
  mp.theta_law = {{0.3, 0.6}, {0.3, 0.6}, {0.03, 0.06}};
  const MixtureMeans mm = benchmark_mean_matrix(dim_case, mu, seed_combine({seed, 1}));
  mp.means = mm.community;
  mp.extra_means = mm.extra;
  mp.cov_noise_sd = 1.0;
  mp.gamma = gamma;
  mp.seed = seed;
  return mp;
}

bool RegimeSpec::is_dense(int community) const {
  return std::binary_search(dense_communities.begin(), dense_communities.end(), community);
}

RegimeSpec classify_regime(const std::vector<double>& theta, const std::vector<int>& truth,
                           int k, const RegimeThresholds& thresholds) {
  if (theta.size() != truth.size()) throw DimensionError("theta and truth differ in length");
  if (theta.empty()) throw DomainError("cannot classify an empty model");
  if (!(thresholds.dense_c > 0.0 && thresholds.dense_c < 1.0))
    throw DomainError("dense threshold must lie in (0, 1)");
  if (!(thresholds.sparse_cap > 0.0)) throw DomainError("sparse cap must be positive");
  const auto n = static_cast<double>(theta.size());
  const double theta_max = *std::max_element(theta.begin(), theta.end());

  std::vector<double> lo(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
  std::vector<double> hi(static_cast<std::size_t>(k), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const int c = truth[i];
    if (c < 0 || c >= k) throw DomainError("community label out of range");
    lo[static_cast<std::size_t>(c)] = std::min(lo[static_cast<std::size_t>(c)], theta[i]);
    hi[static_cast<std::size_t>(c)] = std::max(hi[static_cast<std::size_t>(c)], theta[i]);
  }

  RegimeSpec spec;
  for (int c = 0; c < k; ++c) {
    const bool dense = lo[static_cast<std::size_t>(c)] >= thresholds.dense_c * theta_max;
    const bool sparse = hi[static_cast<std::size_t>(c)] * n * theta_max <= thresholds.sparse_cap;
    if (dense)  // dense takes precedence when both tests pass; empty communities land here
      spec.dense_communities.push_back(c);
    else if (sparse)
      spec.sparse_communities.push_back(c);
    else
      throw ClassificationError(
          "community " + std::to_string(c) + " is neither dense nor sparse: theta in [" +
          std::to_string(lo[static_cast<std::size_t>(c)]) + ", " + std::to_string(hi[static_cast<std::size_t>(c)]) +
          "], theta_max " + std::to_string(theta_max) + ", n " + std::to_string(theta.size()));
  }
  return spec;
}

OracleDecomposition oracle_matrix(const ModelParams& params, const GeneratedInstance& instance,
                                  const RegimeSpec& regime, double weight_c) {
  validate(params);
  if (!(weight_c > 0.0 && weight_c < 1.0))
    throw DomainError("oracle weight constant must lie in (0, 1)");
  const int n = params.n;
  const int p = params.covariate_dim();
  const int k = params.k;
  if (static_cast<int>(instance.truth.size()) != n || static_cast<int>(instance.theta.size()) != n ||
      static_cast<int>(instance.drawn_distribution.size()) != n)
    throw DimensionError("instance does not match the model dimensions");

  Eigen::MatrixXd ex(n, p);
  for (int i = 0; i < n; ++i)
    ex.row(i) = params.mixture_mean(instance.drawn_distribution[static_cast<std::size_t>(i)]);

  // Expected adjacency (clamped like the generator, zero diagonal: the observed
  // graph has no self-loops).  Degree expectations, and hence alpha*, come from
  // this matrix.
  Eigen::MatrixXd ea(n, n);
  for (int i = 0; i < n; ++i) {
    ea(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double v = std::min(
          1.0, instance.theta[static_cast<std::size_t>(i)] * instance.theta[static_cast<std::size_t>(j)] *
                   params.p(instance.truth[static_cast<std::size_t>(i)], instance.truth[static_cast<std::size_t>(j)]));
      ea(i, j) = v;
      ea(j, i) = v;
    }
  }

  OracleDecomposition dec;
  dec.alpha_star.resize(static_cast<std::size_t>(n));
  const Eigen::VectorXd edeg = ea.rowwise().sum();
  const double expected_mean_degree = edeg.mean();
  const double log_n = std::log(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    dec.alpha_star[static_cast<std::size_t>(i)] =
        weight_c * expected_mean_degree / (edeg(i) / log_n + 1.0);

  // The population product restores the self-pair term theta_i^2 P(c,c): with it,
  // a dense row i is exactly theta_i * sum_{j dense} theta_j P(c, l(j)) E[x_j], a
  // community-wide direction scaled per node, so the good-set matrix has exact
  // rank K and its singular vectors carry the advertised scaling structure.
  // Deleting the diagonal would add a node-dependent deviation of relative size
  // ~1/(n*theta_bar) that no tolerance near 1e-8 could absorb.
  for (int i = 0; i < n; ++i)
    ea(i, i) = std::min(1.0, instance.theta[static_cast<std::size_t>(i)] *
                                 instance.theta[static_cast<std::size_t>(i)] *
                                 params.p(instance.truth[static_cast<std::size_t>(i)],
                                          instance.truth[static_cast<std::size_t>(i)]));

  std::vector<bool> node_dense(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i)
    node_dense[static_cast<std::size_t>(i)] = regime.is_dense(instance.truth[static_cast<std::size_t>(i)]);
  std::vector<bool> miss(static_cast<std::size_t>(n), false);
  for (int i : instance.misspecified) miss[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < n; ++i)
    if (node_dense[static_cast<std::size_t>(i)] || !miss[static_cast<std::size_t>(i)])
      dec.good_set.push_back(i);

  // Zero the adjacency expectation outside dense-dense pairs, then one product gives
  // the dense block's rows; sparse rows are overwritten with their diagonal term.
  Eigen::MatrixXd ea_dd = ea;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!node_dense[static_cast<std::size_t>(i)] || !node_dense[static_cast<std::size_t>(j)])
        ea_dd(i, j) = 0.0;
  dec.omega = ea_dd * ex;
  for (int i = 0; i < n; ++i)
    if (!node_dense[static_cast<std::size_t>(i)])
      dec.omega.row(i) = dec.alpha_star[static_cast<std::size_t>(i)] * ex.row(i);

  if (k > std::min(n, p))
    throw RankDeficiencyError("oracle rows cannot have rank " + std::to_string(k) +
                              " in dimension " + std::to_string(std::min(n, p)));
  Eigen::MatrixXd omega_good = dec.omega;
  std::vector<bool> good(static_cast<std::size_t>(n), false);
  for (int i : dec.good_set) good[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < n; ++i)
    if (!good[static_cast<std::size_t>(i)]) omega_good.row(i).setZero();

  SpectralEmbedding svd = top_k_left_singular(omega_good, k);
  if (svd.singular_values(0) <= 0.0 ||
      svd.singular_values(k - 1) <= 1e-8 * svd.singular_values(0))
    throw RankDeficiencyError(
        "good-set oracle rows are numerically rank deficient (sigma_K/sigma_1 = " +
        std::to_string(svd.singular_values(k - 1) /
                       std::max(svd.singular_values(0), std::numeric_limits<double>::min())) +
        ")");
  dec.xi = std::move(svd.xi_hat);
  dec.lambda = std::move(svd.singular_values);
  dec.u = omega_good.transpose() * dec.xi * dec.lambda.cwiseInverse().asDiagonal();
  return dec;
}

OracleStructureReport verify_oracle_structure(const OracleDecomposition& dec,
                                              const RegimeSpec& regime,
                                              const std::vector<int>& truth,
                                              const std::vector<double>& theta) {
  const int n = static_cast<int>(dec.xi.rows());
  if (static_cast<int>(truth.size()) != n || static_cast<int>(theta.size()) != n)
    throw DimensionError("truth/theta do not match the decomposition");
  const int k = static_cast<int>(regime.dense_communities.size() + regime.sparse_communities.size());

  std::vector<bool> good(static_cast<std::size_t>(n), false);
  for (int i : dec.good_set) good[static_cast<std::size_t>(i)] = true;

  OracleStructureReport report;
  report.community_deviation.assign(static_cast<std::size_t>(k), 0.0);

  for (int c = 0; c < k; ++c) {
    const bool dense = regime.is_dense(c);
    Eigen::RowVectorXd rep;
    bool have_rep = false;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      if (truth[static_cast<std::size_t>(i)] != c) continue;
      if (!dense && !good[static_cast<std::size_t>(i)]) continue;  // bad rows checked separately
      const double scale =
          dense ? theta[static_cast<std::size_t>(i)] : dec.alpha_star[static_cast<std::size_t>(i)];
      const Eigen::RowVectorXd scaled = dec.xi.row(i) / scale;
      if (!have_rep) {
        rep = scaled;
        have_rep = true;
      } else {
        worst = std::max(worst, (scaled - rep).norm());
      }
    }
    report.community_deviation[static_cast<std::size_t>(c)] = worst;
    if (dense)
      report.max_dense_deviation = std::max(report.max_dense_deviation, worst);
    else
      report.max_sparse_deviation = std::max(report.max_sparse_deviation, worst);
  }

  for (int i = 0; i < n; ++i)
    if (!good[static_cast<std::size_t>(i)])
      report.max_bad_row_norm = std::max(report.max_bad_row_norm, dec.xi.row(i).norm());

  report.dense_ok = report.max_dense_deviation <= 1e-8;
  report.sparse_ok = report.max_sparse_deviation <= 1e-8;
  report.bad_rows_ok = report.max_bad_row_norm <= 1e-10;
  return report;
}

double tau_norm(const Eigen::MatrixXd& z) {
  if (z.rows() == 0 || z.cols() == 0) return 0.0;
  const double inf_norm = z.cwiseAbs().rowwise().sum().maxCoeff();
  const double one_norm = z.cwiseAbs().colwise().sum().maxCoeff();
  const double d1 = static_cast<double>(z.rows());
  const double d2 = static_cast<double>(z.cols());
  return std::max(std::sqrt(d1 / d2) * inf_norm, std::sqrt(d2 / d1) * one_norm);
}

double sparse_misspec_fraction(const GeneratedInstance& instance, const RegimeSpec& regime) {
  if (instance.truth.empty()) throw DomainError("empty instance");
  long count = 0;
  for (int i : instance.misspecified)
    if (!regime.is_dense(instance.truth[static_cast<std::size_t>(i)])) ++count;
  return static_cast<double>(count) / static_cast<double>(instance.truth.size());
}

void save_instance(const GeneratedInstance& instance, const ModelParams& params,
                   const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);
  save_edge_list(instance.graph, (base / "edges.txt").string());
  save_matrix_csv(instance.covariates, (base / "covariates.csv").string());
  save_labels(instance.truth, (base / "truth.txt").string());

  nlohmann::json manifest;
  manifest["n"] = params.n;
  manifest["k"] = params.k;
  manifest["seed"] = params.seed;
  manifest["gamma"] = params.gamma;
  manifest["cov_noise_sd"] = params.cov_noise_sd;
  manifest["covariate_dim"] = params.covariate_dim();
  manifest["mixture_count"] = params.mixture_count();
  manifest["pi"] = std::vector<double>(params.pi.data(), params.pi.data() + params.pi.size());
  {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < params.p.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(params.p.cols()));
      for (int j = 0; j < params.p.cols(); ++j) row[static_cast<std::size_t>(j)] = params.p(i, j);
      rows.push_back(std::move(row));
    }
    manifest["p_matrix"] = rows;
  }
  {
    nlohmann::json laws = nlohmann::json::array();
    for (const ThetaLaw& law : params.theta_law) laws.push_back({{"lo", law.lo}, {"hi", law.hi}});
    manifest["theta_law"] = laws;
  }
  auto matrix_rows = [](const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < m.rows(); ++i) {
      std::vector<double> row(static_cast<std::size_t>(m.cols()));
      for (int j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(i, j);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  manifest["means"] = matrix_rows(params.means);
  manifest["extra_means"] = matrix_rows(params.extra_means);
  manifest["theta"] = instance.theta;
  manifest["drawn_distribution"] = instance.drawn_distribution;
  manifest["misspecified"] = instance.misspecified;
  manifest["clamped_probabilities"] = instance.clamped_probabilities;
  manifest["edge_count"] = instance.graph.edge_count();
  manifest["files"] = {{"edges", "edges.txt"}, {"covariates", "covariates.csv"}, {"truth", "truth.txt"}};

  std::ofstream out(base / "manifest.json");
  if (!out) throw ParseError("cannot open manifest for writing in " + dir);
  out << manifest.dump(2) << '\n';
}

}  // namespace nacsc
