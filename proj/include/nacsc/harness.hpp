#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "nacsc/baselines.hpp"
#include "nacsc/dcsbm.hpp"

namespace nacsc {

enum class Study { kPMatrix, kSignal, kMisspec };
enum class Profile { kDesk, kPaper };

std::string study_name(Study study);      // p_matrix, signal, misspec
Study parse_study(const std::string& s);  // ParseError on unknown
std::string profile_name(Profile profile);
Profile parse_profile(const std::string& s);
std::string dim_case_name(CovariateCase dim_case);  // low_dim, high_dim
CovariateCase parse_dim_case(const std::string& s);

// Swept parameter per study: p_matrix sweeps the off-diagonal intensity over
// [0.1, 0.9]; signal sweeps the mean strength (mu1 in [0.1, 0.5] high-dim, mu2 in
// [0.3, 0.7] low-dim); misspec sweeps gamma over [0, 0.7].
std::vector<double> default_sweep_values(Study study, CovariateCase dim_case);
int default_n(Profile profile);     // desk 300, paper 1000
int default_reps(Profile profile);  // desk 20, paper 50

struct SweepConfig {
  Study study = Study::kMisspec;
  CovariateCase dim_case = CovariateCase::kLowDim;
  Profile profile = Profile::kDesk;  // desk-scale by default; full scale behind the flag
  std::vector<double> values;  // empty -> default_sweep_values(study, dim_case)
  int n = 0;                   // 0 -> default_n(profile)
  int reps = 0;                // 0 -> default_reps(profile)
  std::vector<Method> methods = {Method::kNac, Method::kNetRegLaplacian, Method::kCovOnly,
                                 Method::kCovAssisted};
  std::uint64_t base_seed = 1;
  int threads = 0;  // 0 -> hardware concurrency
  bool oracle_tuning = true;  // cov_assisted picks h by true error, as in the benchmark
  int restarts = 20;
  // Fixed benchmark parameters, overridden by the swept value per study.
  double fixed_p_offdiag = 0.5;
  double fixed_mu1 = 0.3;
  double fixed_mu2 = 0.5;
  double fixed_gamma = 0.1;
};

struct SimulationRecord {
  Study study = Study::kMisspec;
  CovariateCase dim_case = CovariateCase::kLowDim;
  double value = 0.0;
  int rep = 0;
  Method method = Method::kNac;
  bool ok = false;
  std::string message;  // failure description; empty when ok
  double overall_error = std::numeric_limits<double>::quiet_NaN();
  double dense_error = std::numeric_limits<double>::quiet_NaN();
  double sparse_good_error = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double chosen_h = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = std::numeric_limits<double>::quiet_NaN();  // kept out of the CSVs
};

// Deterministic per-instance seed: a hash of the base seed, study, swept value bits,
// and repetition index.
std::uint64_t instance_seed(std::uint64_t base, Study study, double value, int rep);

// Runs every (value, rep) job over a thread pool; each job generates one instance and
// evaluates every configured method on it. Records come back in (value, rep, method)
// order and are byte-stable across thread counts. Method failures become failed
// records; the sweep continues.
std::vector<SimulationRecord> run_sweep(const SweepConfig& cfg);

// Re-runs one (value, rep) job exactly as run_sweep would, returning one record per
// configured method; lets callers audit recorded results against a fresh computation.
std::vector<SimulationRecord> run_single(const SweepConfig& cfg, double value, int rep);

// One row per record, without wall time, NaN fields left blank.
void write_records_csv(const std::vector<SimulationRecord>& records, const std::string& path);
// Per (value, method): rep counts, mean errors, and the standard error of the mean.
void write_aggregate_csv(const std::vector<SimulationRecord>& records, const std::string& path);
// Wall-clock companion (non-deterministic, hence separate from the record CSV).
void write_timing_csv(const std::vector<SimulationRecord>& records, const std::string& path);

}  // namespace nacsc
