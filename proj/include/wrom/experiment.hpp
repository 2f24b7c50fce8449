#pragma once

#include <filesystem>
#include <optional>

#include "wrom/config.hpp"
#include "wrom/gbar.hpp"
#include "wrom/metrics.hpp"
#include "wrom/pca.hpp"
#include "wrom/tpca.hpp"

namespace wrom {

struct ModelSuite {
  const PcaModel* pca = nullptr;
  const TpcaModel* tpca = nullptr;
  const GbarDictionary* gbar = nullptr;
};

struct EvaluateOptions {
  std::vector<int> ranks;
  std::vector<std::string> metrics = {"l2", "w2", "hm1"};
  InterpSettings interp;
  MonotonePolicy policy = MonotonePolicy::rearrange;
  double fem_h = 1e-3;
  bool with_runtime = false;
  int runtime_repeats = 3;
};

struct SuiteResult {
  ErrorReport report;
  long tpca_repairs = 0;        // monotonicity repairs triggered by tPCA
  long gbar_invalid = 0;        // gBar outputs failing the validity check
  Eigen::VectorXd hf_seconds;   // per test sample
  Eigen::MatrixXd online_seconds;  // test sample x model (when with_runtime)
  std::vector<std::string> online_models;
};

/// Average/worst-case errors of the fitted models over a test set, per
/// metric and rank; optional online/high-fidelity runtime ratios.
SuiteResult evaluate_suite(const ModelSuite& models, const SnapshotSet& test,
                           const EvaluateOptions& opts);

struct FittedModels {
  PcaModel pca;
  TpcaModel tpca;
  GbarDictionary gbar;
};

FittedModels fit_all(const SnapshotSet& train, const ExperimentConfig& cfg);

/// Output root: config.output resolved against $WROM_OUTPUT_ROOT when relative.
std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg);

/// Full pipeline: snapshots, models, error CSVs, decay curves, reconstruction
/// dumps, manifest. Returns the archive directory.
std::filesystem::path run_experiment(const ExperimentConfig& cfg);

/// Training-set-size sweep; writes sweep.csv under the archive directory.
std::filesystem::path run_size_sweep(const ExperimentConfig& cfg);

/// Runtime ratio study (viscous Burgers only); writes runtime.csv and
/// runtime_vs_t.csv.
std::filesystem::path runtime_report(const ExperimentConfig& cfg);

/// True when every configured threshold holds in the report.
bool check_thresholds(const ExperimentConfig& cfg, const ErrorReport& report,
                      std::ostream& log);

}  // namespace wrom
