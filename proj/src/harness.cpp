#include "nacsc/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "nacsc/clustering.hpp"
#include "nacsc/errors.hpp"
#include "nacsc/io.hpp"
#include "nacsc/rng.hpp"

namespace nacsc {

std::string study_name(Study study) {
  switch (study) {
    case Study::kPMatrix: return "p_matrix";
    case Study::kSignal: return "signal";
    case Study::kMisspec: return "misspec";
  }
  throw DomainError("unknown study enum value");
}

Study parse_study(const std::string& s) {
  if (s == "p_matrix") return Study::kPMatrix;
  if (s == "signal") return Study::kSignal;
  if (s == "misspec") return Study::kMisspec;
  throw ParseError("unknown study '" + s + "' (expected p_matrix, signal, or misspec)");
}

std::string profile_name(Profile profile) {
  return profile == Profile::kDesk ? "desk" : "paper";
}

Profile parse_profile(const std::string& s) {
  if (s == "desk") return Profile::kDesk;
  if (s == "paper") return Profile::kPaper;
  throw ParseError("unknown profile '" + s + "' (expected desk or paper)");
}

std::string dim_case_name(CovariateCase dim_case) {
  return dim_case == CovariateCase::kLowDim ? "low_dim" : "high_dim";
}

CovariateCase parse_dim_case(const std::string& s) {
  if (s == "low" || s == "low_dim") return CovariateCase::kLowDim;
  if (s == "high" || s == "high_dim") return CovariateCase::kHighDim;
  throw ParseError("unknown dim case '" + s + "' (expected low or high)");
}

std::vector<double> default_sweep_values(Study study, CovariateCase dim_case) {
  auto linspace = [](double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    return v;
  };
  switch (study) {
    case Study::kPMatrix: return linspace(0.1, 0.9, 9);
    case Study::kSignal:
      return dim_case == CovariateCase::kHighDim ? linspace(0.1, 0.5, 5) : linspace(0.3, 0.7, 5);
    case Study::kMisspec: return linspace(0.0, 0.7, 8);
  }
  throw DomainError("unknown study enum value");
}

int default_n(Profile profile) { return profile == Profile::kDesk ? 300 : 1000; }
int default_reps(Profile profile) { return profile == Profile::kDesk ? 20 : 50; }

std::uint64_t instance_seed(std::uint64_t base, Study study, double value, int rep) {
  return seed_combine(
      {base, static_cast<std::uint64_t>(study), double_bits(value), static_cast<std::uint64_t>(rep)});
}

namespace {

std::string sanitize_message(std::string msg) {
  for (char& c : msg)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return msg;
}

struct InstanceSubsets {
  std::vector<int> dense;        // nodes in dense communities
  std::vector<int> sparse_good;  // well-specified nodes in sparse communities
};

InstanceSubsets split_subsets(const GeneratedInstance& inst, const RegimeSpec& regime) {
  std::vector<bool> miss(inst.truth.size(), false);
  for (int i : inst.misspecified) miss[static_cast<std::size_t>(i)] = true;
  InstanceSubsets subsets;
  for (std::size_t i = 0; i < inst.truth.size(); ++i) {
    if (regime.is_dense(inst.truth[i]))
      subsets.dense.push_back(static_cast<int>(i));
    else if (!miss[i])
      subsets.sparse_good.push_back(static_cast<int>(i));
  }
  return subsets;
}

void run_job(const SweepConfig& cfg, double value, int rep, int n, SimulationRecord* slots) {
  const std::uint64_t seed = instance_seed(cfg.base_seed, cfg.study, value, rep);
  double p_offdiag = cfg.fixed_p_offdiag;
  double mu = cfg.dim_case == CovariateCase::kHighDim ? cfg.fixed_mu1 : cfg.fixed_mu2;
  double gamma = cfg.fixed_gamma;
  switch (cfg.study) {
    case Study::kPMatrix: p_offdiag = value; break;
    case Study::kSignal: mu = value; break;
    case Study::kMisspec: gamma = value; break;
  }

  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    SimulationRecord& rec = slots[m];
    rec.study = cfg.study;
    rec.dim_case = cfg.dim_case;
    rec.value = value;
    rec.rep = rep;
    rec.method = cfg.methods[m];
  }

  const ModelParams params = benchmark_params(cfg.dim_case, n, p_offdiag, mu, gamma, seed);
  GeneratedInstance inst;
  RegimeSpec regime;
  try {
    inst = generate(params);
    regime = classify_regime(inst.theta, inst.truth, params.k);
  } catch (const Error& e) {
    for (std::size_t m = 0; m < cfg.methods.size(); ++m)
      slots[m].message = sanitize_message(e.what());
    return;
  }
  const double eps = sparse_misspec_fraction(inst, regime);
  const InstanceSubsets subsets = split_subsets(inst, regime);

  for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
    SimulationRecord& rec = slots[m];
    rec.epsilon = eps;
    BaselineConfig bc;
    bc.restarts = cfg.restarts;
    bc.seed = seed_combine({seed, static_cast<std::uint64_t>(cfg.methods[m])});
    bc.oracle_tuning = cfg.oracle_tuning;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const MethodResult res =
          run_method(cfg.methods[m], inst.graph, inst.covariates, params.k, bc, &inst.truth);
      rec.overall_error = align_and_error(res.clustering.labels, inst.truth, params.k).error_rate;
      if (!subsets.dense.empty())
        rec.dense_error = error_on_subset(res.clustering.labels, inst.truth, params.k, subsets.dense);
      if (!subsets.sparse_good.empty())
        rec.sparse_good_error =
            error_on_subset(res.clustering.labels, inst.truth, params.k, subsets.sparse_good);
      rec.chosen_h = res.chosen_h;
      rec.ok = true;
    } catch (const Error& e) {
      rec.message = sanitize_message(e.what());
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
}

}  // namespace

std::vector<SimulationRecord> run_single(const SweepConfig& cfg, double value, int rep) {
  if (cfg.methods.empty()) throw DomainError("sweep requires at least one method");
  const int n = cfg.n > 0 ? cfg.n : default_n(cfg.profile);
  std::vector<SimulationRecord> records(cfg.methods.size());
  run_job(cfg, value, rep, n, records.data());
  return records;
}

std::vector<SimulationRecord> run_sweep(const SweepConfig& cfg) {
  const int n = cfg.n > 0 ? cfg.n : default_n(cfg.profile);
  const int reps = cfg.reps > 0 ? cfg.reps : default_reps(cfg.profile);
  const std::vector<double> values =
      cfg.values.empty() ? default_sweep_values(cfg.study, cfg.dim_case) : cfg.values;
  if (cfg.methods.empty()) throw DomainError("sweep requires at least one method");

  const std::size_t jobs = values.size() * static_cast<std::size_t>(reps);
  const std::size_t per_job = cfg.methods.size();
  std::vector<SimulationRecord> records(jobs * per_job);

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned thread_count =
      cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : hw;
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(jobs == 0 ? 1 : jobs, thread_count));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) break;
      const std::size_t vi = job / static_cast<std::size_t>(reps);
      const int rep = static_cast<int>(job % static_cast<std::size_t>(reps));
      run_job(cfg, values[vi], rep, n, records.data() + job * per_job);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

namespace {

std::string field(double v) { return std::isnan(v) ? std::string() : format_double(v); }

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  return out;
}

}  // namespace

void write_records_csv(const std::vector<SimulationRecord>& records, const std::string& path) {
  auto out = open_csv(path);
  out << "study,dim_case,value,rep,method,status,overall_error,dense_error,sparse_good_error,"
         "epsilon,chosen_h,message\n";
  for (const SimulationRecord& r : records) {
    out << study_name(r.study) << ',' << dim_case_name(r.dim_case) << ',' << format_double(r.value)
        << ',' << r.rep << ',' << method_name(r.method) << ',' << (r.ok ? "ok" : "failed") << ','
        << field(r.overall_error) << ',' << field(r.dense_error) << ','
        << field(r.sparse_good_error) << ',' << field(r.epsilon) << ',' << field(r.chosen_h) << ','
        << r.message << '\n';
  }
}

void write_aggregate_csv(const std::vector<SimulationRecord>& records, const std::string& path) {
  auto out = open_csv(path);
  out << "study,dim_case,value,method,reps_ok,mean_error,stderr_error,mean_dense_error,"
         "mean_sparse_good_error,mean_epsilon\n";

  // Group keys in first-appearance order keeps the output deterministic.
  std::vector<std::pair<double, Method>> keys;
  for (const SimulationRecord& r : records) {
    const std::pair<double, Method> key{r.value, r.method};
    bool seen = false;
    for (const auto& k : keys)
      if (k.first == key.first && k.second == key.second) {
        seen = true;
        break;
      }
    if (!seen) keys.push_back(key);
  }

  for (const auto& [value, method] : keys) {
    long ok_count = 0;
    double sum = 0.0;
    std::vector<double> errs;
    double dense_sum = 0.0;
    long dense_count = 0;
    double sparse_sum = 0.0;
    long sparse_count = 0;
    double eps_sum = 0.0;
    long eps_count = 0;
    Study study = Study::kMisspec;
    CovariateCase dim_case = CovariateCase::kLowDim;
    for (const SimulationRecord& r : records) {
      if (r.value != value || r.method != method) continue;
      study = r.study;
      dim_case = r.dim_case;
      if (!std::isnan(r.epsilon)) {
        eps_sum += r.epsilon;
        ++eps_count;
      }
      if (!r.ok) continue;
      ++ok_count;
      sum += r.overall_error;
      errs.push_back(r.overall_error);
      if (!std::isnan(r.dense_error)) {
        dense_sum += r.dense_error;
        ++dense_count;
      }
      if (!std::isnan(r.sparse_good_error)) {
        sparse_sum += r.sparse_good_error;
        ++sparse_count;
      }
    }
    const double mean = ok_count > 0 ? sum / static_cast<double>(ok_count)
                                     : std::numeric_limits<double>::quiet_NaN();
    double se = std::numeric_limits<double>::quiet_NaN();
    if (ok_count > 1) {
      double ss = 0.0;
      for (double e : errs) ss += (e - mean) * (e - mean);
      se = std::sqrt(ss / static_cast<double>(ok_count - 1)) /
           std::sqrt(static_cast<double>(ok_count));
    }
    out << study_name(study) << ',' << dim_case_name(dim_case) << ',' << format_double(value)
        << ',' << method_name(method) << ',' << ok_count << ',' << field(mean) << ',' << field(se)
        << ','
        << field(dense_count > 0 ? dense_sum / static_cast<double>(dense_count)
                                 : std::numeric_limits<double>::quiet_NaN())
        << ','
        << field(sparse_count > 0 ? sparse_sum / static_cast<double>(sparse_count)
                                  : std::numeric_limits<double>::quiet_NaN())
        << ','
        << field(eps_count > 0 ? eps_sum / static_cast<double>(eps_count)
                               : std::numeric_limits<double>::quiet_NaN())
        << '\n';
  }
}

void write_timing_csv(const std::vector<SimulationRecord>& records, const std::string& path) {
  auto out = open_csv(path);
  out << "study,dim_case,value,rep,method,wall_seconds\n";
  for (const SimulationRecord& r : records)
    out << study_name(r.study) << ',' << dim_case_name(r.dim_case) << ',' << format_double(r.value)
        << ',' << r.rep << ',' << method_name(r.method) << ',' << field(r.wall_seconds) << '\n';
}

}  // namespace nacsc
