#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "nacsc/graph.hpp"

namespace nacsc {

// Per-community uniform law for the degree-heterogeneity weights theta_i.
struct ThetaLaw {
  double lo = 1.0;
  double hi = 1.0;
};

struct ModelParams {
  int n = 0;
  int k = 0;
  Eigen::VectorXd pi;               // community probabilities, length K, sums to 1
  Eigen::MatrixXd p;                // K x K symmetric intensity matrix, entries in [0,1]
  std::vector<ThetaLaw> theta_law;  // one law per community, values in (0,1]
  Eigen::MatrixXd means;            // K x p community covariate means
  Eigen::MatrixXd extra_means;      // optional additional mixture rows (0 x p if none)
  double cov_noise_sd = 1.0;        // sigma of the isotropic Gaussian covariate noise
  double gamma = 0.0;               // mis-specification mixture weight in [0,1]
  std::uint64_t seed = 0;

  int covariate_dim() const { return static_cast<int>(means.cols()); }
  int mixture_count() const { return static_cast<int>(means.rows() + extra_means.rows()); }
  // Mean row of mixture component `c` (community rows first, then extras).
  Eigen::RowVectorXd mixture_mean(int c) const;
};

// Throws DomainError / DimensionError when a field violates its invariants.
void validate(const ModelParams& params);

struct GeneratedInstance {
  Graph graph{0, {}};
  Eigen::MatrixXd covariates;           // n x p
  std::vector<int> truth;               // community labels, length n
  std::vector<double> theta;            // length n
  std::vector<int> drawn_distribution;  // mixture component actually used per node
  std::vector<int> misspecified;        // sorted indices with drawn != truth
  long clamped_probabilities = 0;       // count of edge probabilities clamped to 1
};

// Draw order (fixed for reproducibility): labels for all nodes, then thetas, then the
// upper-triangle edge Bernoullis in (i, j) lexicographic order, then per node one
// mixture pick (plus one more uniform when mis-specified) followed by p noise normals.
GeneratedInstance generate(const ModelParams& params);

enum class CovariateCase { kLowDim, kHighDim };  // p = 20 / p = 600

struct MixtureMeans {
  Eigen::MatrixXd community;  // K x p
  Eigen::MatrixXd extra;      // remaining mixture rows
};

// Benchmark mean construction for the five-component covariate mixture.
// Low-dim (p=20): row k (0-based) gets mean mu + 0.1*Bernoulli(1/2) on columns
// 5k..5k+3 and 0.1*Bernoulli(1/2) elsewhere; the fifth row has no signal block.
// High-dim (p=600): 60 columns are chosen useful at random; every row gets
// mu*Bernoulli(1/2) on useful columns and 0 elsewhere.
MixtureMeans benchmark_mean_matrix(CovariateCase dim_case, double mu, std::uint64_t seed);

// Full benchmark model: K=3 equal-probability communities, P with unit diagonal and
// off-diagonal `p_offdiag`, theta ~ U(0.3, 0.6) for communities 0-1 and U(0.03, 0.06)
// for community 2, unit covariate noise, and benchmark_mean_matrix(dim_case, mu, ...).
ModelParams benchmark_params(CovariateCase dim_case, int n, double p_offdiag, double mu,
                             double gamma, std::uint64_t seed);

struct RegimeThresholds {
  double dense_c = 0.1;     // community k dense if min theta_i >= dense_c * theta_max
  double sparse_cap = 50.0;  // sparse if max n * theta_i * theta_max <= sparse_cap
};

struct RegimeSpec {
  std::vector<int> dense_communities;   // sorted
  std::vector<int> sparse_communities;  // sorted
  bool is_dense(int community) const;
};

// Classifies every community as dense or sparse (dense wins when both tests pass);
// a community passing neither test raises ClassificationError naming it.
RegimeSpec classify_regime(const std::vector<double>& theta, const std::vector<int>& truth,
                           int k, const RegimeThresholds& thresholds = {});

struct OracleDecomposition {
  Eigen::MatrixXd omega;           // n x p noiseless counterpart of the adjusted covariates
  std::vector<double> alpha_star;  // expectation-form self weights, length n
  std::vector<int> good_set;       // sorted: dense nodes plus well-specified sparse nodes
  Eigen::MatrixXd xi;              // n x K top left singular vectors of the good-set rows
  Eigen::VectorXd lambda;          // K singular values
  Eigen::MatrixXd u;               // p x K right singular vectors
};

// Builds the population matrix: dense rows get the expected-adjacency mixing restricted
// to dense nodes (self-pair term included, so each dense community's rows share one
// direction scaled by theta_i), sparse rows get alpha*_i times the node's own expected
// covariate. alpha* uses observed-graph degree expectations (no self-loops). Expected
// covariates use each node's actually drawn mixture mean. Raises RankDeficiencyError
// when the good-set rows have numerical rank below K.
OracleDecomposition oracle_matrix(const ModelParams& params, const GeneratedInstance& instance,
                                  const RegimeSpec& regime, double weight_c = 0.5);

struct OracleStructureReport {
  double max_dense_deviation = 0.0;   // rows xi_i / theta_i vs community representative
  double max_sparse_deviation = 0.0;  // rows xi_i / alpha*_i vs community representative
  double max_bad_row_norm = 0.0;      // rows outside the good set
  std::vector<double> community_deviation;  // per-community worst row deviation
  bool dense_ok = false;              // max_dense_deviation <= 1e-8
  bool sparse_ok = false;             // max_sparse_deviation <= 1e-8
  bool bad_rows_ok = false;           // max_bad_row_norm <= 1e-10
  bool passed() const { return dense_ok && sparse_ok && bad_rows_ok; }
};

// Checks the block structure of the oracle's left singular vectors: within each dense
// community the rows scale with theta_i, within each sparse community the good rows
// scale with alpha*_i, and rows outside the good set vanish.
OracleStructureReport verify_oracle_structure(const OracleDecomposition& dec,
                                              const RegimeSpec& regime,
                                              const std::vector<int>& truth,
                                              const std::vector<double>& theta);

// max{ sqrt(d1/d2) * max row abs sum, sqrt(d2/d1) * max column abs sum }.
double tau_norm(const Eigen::MatrixXd& z);

// Fraction of nodes that are both mis-specified and in a sparse community.
double sparse_misspec_fraction(const GeneratedInstance& instance, const RegimeSpec& regime);

// Writes edges.txt, covariates.csv, truth.txt, and manifest.json under `dir`.
void save_instance(const GeneratedInstance& instance, const ModelParams& params,
                   const std::string& dir);

}  // namespace nacsc
