#include "wrom/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>

#include "json.hpp"
#include "wrom/io.hpp"
#include "wrom/svg.hpp"

namespace wrom {

namespace {

constexpr const char* kVersion = "wrom-0.1.0";

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// validity of a reconstruction icdf: nondecreasing and inside the domain,
// same tolerance as the reject policy
bool icdf_valid(const Eigen::VectorXd& v, const SpatialGrid& g) {
  const double tol = 1e-12 * g.length();
  for (Eigen::Index j = 1; j < v.size(); ++j)
    if (v[j] < v[j - 1] - tol) return false;
  return v[0] >= g.x_min - tol && v[v.size() - 1] <= g.x_max + tol;
}

struct SampleErrors {
  // metric -> per-rank error for one test sample
  std::map<std::string, std::vector<double>> err;
};

}  // namespace

SuiteResult evaluate_suite(const ModelSuite& models, const SnapshotSet& test,
                           const EvaluateOptions& opts) {
  const int nt = test.size();
  const auto& fam = test.family;
  FemMesh mesh(fam.grid.x_min, fam.grid.x_max,
               std::max(2, static_cast<int>(std::lround(fam.grid.length() / opts.fem_h))));

  struct Variant {
    std::string name;
    bool needs_interp;
  };
  std::vector<Variant> variants;
  if (models.pca) variants.push_back({"pca", false});
  if (models.tpca) {
    variants.push_back({"tpca-proj", false});
    variants.push_back({"tpca-interp", true});
  }
  if (models.gbar) {
    variants.push_back({"gbar-proj", false});
    variants.push_back({"gbar-interp", true});
  }

  SuiteResult result;
  result.hf_seconds = test.walltime;
  if (opts.with_runtime) {
    result.online_seconds =
        Eigen::MatrixXd::Zero(nt, static_cast<Eigen::Index>(variants.size()));
    for (const auto& v : variants) result.online_models.push_back(v.name);
  }

  const bool want_l2 = std::count(opts.metrics.begin(), opts.metrics.end(), "l2");
  const bool want_w2 = std::count(opts.metrics.begin(), opts.metrics.end(), "w2");
  const bool want_hm1 = std::count(opts.metrics.begin(), opts.metrics.end(), "hm1");

  struct Cell {
    double sumsq = 0.0, worst = 0.0;
    long count = 0;
  };
  std::map<std::string, std::map<std::string, std::vector<Cell>>> accum;
  for (const auto& v : variants)
    for (const auto& m : opts.metrics)
      accum[v.name][m].assign(opts.ranks.size(), Cell{});

  for (int i = 0; i < nt; ++i) {
    const DensityField truth = test.measure(i).physical();
    const QuantileFunction truth_icdf = test.icdf(i);
    const double mass = test.masses[i];
    const Eigen::VectorXd z = test.params.row(i).transpose();

    for (size_t vi = 0; vi < variants.size(); ++vi) {
      const auto& variant = variants[vi];
      // shared neighborhood per test point for the interpolating variants
      std::optional<RbfLocalInterpolator> interp;
      std::vector<double> timings;
      const int reps = opts.with_runtime ? opts.runtime_repeats + 1 : 1;

      for (size_t ri = 0; ri < opts.ranks.size(); ++ri) {
        const int n = opts.ranks[ri];
        auto record = [&](const std::string& metric, double e) {
          auto& cell = accum[variant.name][metric][ri];
          cell.sumsq += e * e;
          cell.worst = std::max(cell.worst, e);
          ++cell.count;
        };

        if (variant.name == "pca") {
          if (n > models.pca->rank()) continue;
          const bool timed_pca = opts.with_runtime && n == opts.ranks.back();
          std::optional<DensityField> recon;
          for (int rep = 0; rep < (timed_pca ? reps : 1); ++rep) {
            const double t0 = now_seconds();
            recon = pca_project(*models.pca, truth, n);
            const double t1 = now_seconds();
            if (timed_pca && rep > 0) timings.push_back(t1 - t0);
          }
          if (want_l2) record("l2", l2_error(*recon, truth));
          if (want_hm1) record("hm1", hminus1_error(*recon, truth, mesh));
          continue;
        }

        const bool is_tpca = variant.name.rfind("tpca", 0) == 0;
        if (is_tpca && n > models.tpca->rank()) continue;
        if (!is_tpca && (n < 1 || n > models.gbar->size())) continue;

        // W2-side variants produce an icdf + measure
        std::optional<QuantileFunction> ricdf;
        std::optional<DiscreteMeasure> rmeasure;
        bool repaired = false;
        // warm-up run plus timed repeats at the runtime rank
        const bool timed = opts.with_runtime && n == opts.ranks.back();
        const int runs = timed ? reps : 1;
        for (int rep = 0; rep < runs; ++rep) {
          const double t0 = now_seconds();
          if (variant.name == "tpca-proj") {
            auto rec = tpca_project(*models.tpca, truth_icdf, n, opts.policy);
            repaired = rec.repaired;
            ricdf = std::move(rec.icdf);
            rmeasure = std::move(rec.measure);
          } else if (variant.name == "tpca-interp") {
            if (!interp || rep > 0)
              interp.emplace(models.tpca->params, z, opts.interp);
            auto rec = tpca_interpolate(*models.tpca, *interp, n, opts.policy);
            repaired = rec.repaired;
            ricdf = std::move(rec.icdf);
            rmeasure = std::move(rec.measure);
          } else if (variant.name == "gbar-proj") {
            auto rec = gbar_project(*models.gbar, truth_icdf, n);
            ricdf = std::move(rec.icdf);
            rmeasure = std::move(rec.measure);
          } else {  // gbar-interp
            if (!interp || rep > 0)
              interp.emplace(models.gbar->params, z, opts.interp);
            auto rec = gbar_interpolate(*models.gbar, *interp, n);
            ricdf = std::move(rec.icdf);
            rmeasure = std::move(rec.measure);
          }
          const double t1 = now_seconds();
          if (timed && rep > 0) timings.push_back(t1 - t0);
        }
        if (repaired) ++result.tpca_repairs;
        if (!is_tpca && !icdf_valid(ricdf->values(), fam.grid)) ++result.gbar_invalid;

        if (want_w2) record("w2", w2_distance(*ricdf, truth_icdf));
        if (want_l2 || want_hm1) {
          DensityField recon = rmeasure->physical();
          recon.values *= mass;  // reconstructions rescaled to the truth mass
          if (want_l2) record("l2", l2_error(recon, truth));
          if (want_hm1) record("hm1", hminus1_error(recon, truth, mesh));
        }
      }
      if (opts.with_runtime && !timings.empty())
        result.online_seconds(i, static_cast<Eigen::Index>(vi)) = median_of(timings);
    }
  }

  for (const auto& v : variants) {
    double ratio_mean = std::numeric_limits<double>::quiet_NaN();
    double ratio_median = std::numeric_limits<double>::quiet_NaN();
    if (opts.with_runtime) {
      const auto col = std::find(result.online_models.begin(),
                                 result.online_models.end(), v.name) -
                       result.online_models.begin();
      std::vector<double> ratios(nt);
      for (int i = 0; i < nt; ++i)
        ratios[i] = result.online_seconds(i, col) / std::max(result.hf_seconds[i], 1e-12);
      ratio_mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / nt;
      ratio_median = median_of(ratios);
    }
    for (const auto& m : opts.metrics) {
      if (v.name == "pca" && m == "w2") continue;
      for (size_t ri = 0; ri < opts.ranks.size(); ++ri) {
        const auto& cell = accum[v.name][m][ri];
        if (cell.count == 0) continue;  // rank beyond the model's capacity
        ErrorRow row;
        row.model = v.name;
        row.metric = m;
        row.n = opts.ranks[ri];
        row.e_av = std::sqrt(cell.sumsq / static_cast<double>(cell.count));
        row.e_wc = cell.worst;
        if (opts.with_runtime && opts.ranks[ri] == opts.ranks.back()) {
          row.runtime_ratio_mean = ratio_mean;
          row.runtime_ratio_median = ratio_median;
        }
        result.report.rows.push_back(std::move(row));
      }
    }
  }
  return result;
}

FittedModels fit_all(const SnapshotSet& train, const ExperimentConfig& cfg) {
  FittedModels out;
  out.pca = pca_fit(train, cfg.pca_centered);
  out.tpca = tpca_fit(train);
  const int n_max = cfg.gbar_n_max > 0
                        ? cfg.gbar_n_max
                        : (cfg.ranks.empty() ? 10 : cfg.ranks.back());
  out.gbar = gbar_fit(train, std::max(2, n_max), cfg.gbar_eps);
  return out;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& cfg) {
  std::filesystem::path out = cfg.output;
  if (out.empty()) out = "wrom-out";
  if (out.is_relative()) {
    if (const char* root = std::getenv("WROM_OUTPUT_ROOT")) out = root / out;
  }
  return out;
}

namespace {

void write_csv_header_comment(std::ofstream& os, const ExperimentConfig& cfg) {
  os << "# config=" << cfg.hash() << " train_seed=" << cfg.train_seed
     << " test_seed=" << cfg.test_seed << " version=" << kVersion << "\n";
}

void emit_decay_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                        const FittedModels& models, int train_size) {
  std::ofstream os(dir / "decay.csv");
  write_csv_header_comment(os, cfg);
  os << "model,k,sigma,train_err\n";
  char buf[128];
  const auto emit = [&](const std::string& name, const Eigen::VectorXd& sigma) {
    // train_err at rank k: sqrt(sum_{j>k} sigma_j^2 / N)
    std::vector<double> tail(sigma.size() + 1, 0.0);
    for (int k = static_cast<int>(sigma.size()) - 1; k >= 0; --k)
      tail[k] = tail[k + 1] + sigma[k] * sigma[k];
    for (int k = 0; k < sigma.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g\n", name.c_str(), k + 1,
                    sigma[k], std::sqrt(tail[k + 1] / train_size));
      os << buf;
    }
  };
  emit("pca", models.pca.sigma);
  emit("tpca", models.tpca.sigma);
  for (int k = 0; k < models.gbar.residual_history.size(); ++k) {
    std::snprintf(buf, sizeof buf, "gbar,%d,nan,%.17g\n", k + 1,
                  models.gbar.residual_history[k]);
    os << buf;
  }

  try {
    PlotSeries ps, ts, gs;
    ps.label = "PCA train err (L2)";
    ts.label = "tPCA train err (W2)";
    gs.label = "gBar max residual";
    auto fill = [&](PlotSeries& s, const Eigen::VectorXd& sigma) {
      double tail = sigma.squaredNorm();
      for (int k = 0; k < sigma.size(); ++k) {
        tail -= sigma[k] * sigma[k];
        s.x.push_back(k + 1);
        s.y.push_back(std::sqrt(std::max(tail, 0.0) / train_size));
      }
    };
    fill(ps, models.pca.sigma);
    fill(ts, models.tpca.sigma);
    for (int k = 0; k < models.gbar.residual_history.size(); ++k) {
      gs.x.push_back(k + 1);
      gs.y.push_back(models.gbar.residual_history[k]);
    }
    write_svg_plot(dir / "decay.svg", "Training error decay", "n", "error",
                   {ps, ts, gs}, true);
  } catch (const std::exception& e) {
    std::cerr << "plot emission failed (ignored): " << e.what() << "\n";
  }
}

void emit_reconstruction_dumps(const std::filesystem::path& dir,
                               const ExperimentConfig& cfg, const FittedModels& models,
                               const SnapshotSet& test) {
  const int idx = std::clamp(cfg.dump_index, 0, test.size() - 1);
  const DensityField truth = test.measure(idx).physical();
  const QuantileFunction ticdf = test.icdf(idx);
  const Eigen::VectorXd z = test.params.row(idx).transpose();
  const auto& grid = test.family.grid;

  for (int n : cfg.dump_ranks) {
    std::ofstream os(dir / ("recon_n" + std::to_string(n) + ".csv"));
    write_csv_header_comment(os, cfg);
    os << "x,exact,pca,tpca_proj,tpca_interp,gbar_proj,gbar_interp\n";
    const DensityField pca_r = pca_project(models.pca, truth, std::min(n, models.pca.rank()));
    const auto tp = tpca_project(models.tpca, ticdf, std::min(n, models.tpca.rank()), cfg.repair);
    const auto ti = tpca_interpolate(models.tpca, z, std::min(n, models.tpca.rank()),
                                     cfg.interp, cfg.repair);
    const auto gp = gbar_project(models.gbar, ticdf, std::min(n, models.gbar.size()));
    const auto gi = gbar_interpolate(models.gbar, z, std::min(n, models.gbar.size()),
                                     cfg.interp);
    const double mass = test.masses[idx];
    char buf[256];
    for (int i = 0; i < grid.n_cells; ++i) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                    grid.center(i), truth.values[i], pca_r.values[i],
                    tp.measure.density()[i] * mass, ti.measure.density()[i] * mass,
                    gp.measure.density()[i] * mass, gi.measure.density()[i] * mass);
      os << buf;
    }
    try {
      std::vector<PlotSeries> series(3);
      series[0].label = "exact";
      series[1].label = "tPCA";
      series[2].label = "gBar";
      for (int i = 0; i < grid.n_cells; ++i) {
        series[0].x.push_back(grid.center(i));
        series[0].y.push_back(truth.values[i]);
        series[1].x.push_back(grid.center(i));
        series[1].y.push_back(tp.measure.density()[i] * mass);
        series[2].x.push_back(grid.center(i));
        series[2].y.push_back(gp.measure.density()[i] * mass);
      }
      write_svg_plot(dir / ("recon_n" + std::to_string(n) + ".svg"),
                     "Reconstruction, n=" + std::to_string(n), "x", "density", series,
                     false);
    } catch (const std::exception& e) {
      std::cerr << "plot emission failed (ignored): " << e.what() << "\n";
    }
  }
}

}  // namespace

std::filesystem::path run_experiment(const ExperimentConfig& cfg) {
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  std::filesystem::create_directories(dir);
  const ProblemFamily fam = cfg.problem_family();

  SnapshotSet train = sample_training_set(fam, cfg.train_size, cfg.train_seed);
  save_snapshot_set(dir / "train", train);
  SnapshotSet test = sample_training_set(fam, cfg.test_size, cfg.test_seed);
  save_snapshot_set(dir / "test", test);

  FittedModels models = fit_all(train, cfg);
  std::filesystem::create_directories(dir / "models");
  save_pca(dir / "models" / "pca.bin", models.pca);
  save_tpca(dir / "models" / "tpca.bin", models.tpca);
  save_gbar(dir / "models" / "gbar.bin", models.gbar);

  EvaluateOptions opts;
  opts.ranks = cfg.ranks;
  opts.metrics = cfg.metrics;
  opts.interp = cfg.interp;
  opts.policy = cfg.repair;
  opts.fem_h = cfg.fem_h;
  ModelSuite suite{&models.pca, &models.tpca, &models.gbar};
  SuiteResult result = evaluate_suite(suite, test, opts);

  {
    std::ofstream os(dir / "errors.csv");
    write_csv_header_comment(os, cfg);
    result.report.write_csv(os);
  }
  emit_decay_outputs(dir, cfg, models, train.size());
  emit_reconstruction_dumps(dir, cfg, models, test);

  nlohmann::json manifest;
  manifest["version"] = kVersion;
  manifest["config_hash"] = cfg.hash();
  manifest["family"] = family_name(cfg.family);
  manifest["train_seed"] = cfg.train_seed;
  manifest["test_seed"] = cfg.test_seed;
  manifest["train_size"] = cfg.train_size;
  manifest["test_size"] = cfg.test_size;
  manifest["tpca_repairs"] = result.tpca_repairs;
  manifest["gbar_invalid"] = result.gbar_invalid;
  std::ofstream mf(dir / "run_manifest.json");
  mf << manifest.dump(2) << "\n";
  return dir;
}

std::filesystem::path run_size_sweep(const ExperimentConfig& cfg) {
  if (cfg.sweep.sizes.empty())
    throw ConfigError("run_size_sweep: [sweep] sizes is empty");
  for (int s : cfg.sweep.sizes)
    if (s < 2) throw ConfigError("run_size_sweep: every sweep size must be >= 2");
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  std::filesystem::create_directories(dir);
  const ProblemFamily fam = cfg.problem_family();

  EvaluateOptions opts;
  opts.ranks = cfg.sweep.ranks;
  opts.metrics = cfg.metrics;
  opts.interp = cfg.interp;
  opts.policy = cfg.repair;
  opts.fem_h = cfg.fem_h;

  struct Key {
    int size, n;
    std::string model, metric;
    auto operator<=>(const Key&) const = default;
  };
  std::map<Key, std::vector<std::pair<double, double>>> cells;  // (e_av, e_wc) per realization

  for (int size : cfg.sweep.sizes) {
    for (int r = 0; r < cfg.sweep.realizations; ++r) {
      const std::uint64_t tseed = cfg.train_seed + 1000003ULL * (r + 1) + 17ULL * size;
      const std::uint64_t vseed = cfg.test_seed + 7919ULL * (r + 1) + 31ULL * size;
      SnapshotSet train = sample_training_set(fam, size, tseed);
      SnapshotSet test = sample_training_set(fam, cfg.test_size, vseed);
      ExperimentConfig local = cfg;
      local.gbar_n_max = std::max(2, cfg.sweep.ranks.back());
      local.ranks = cfg.sweep.ranks;
      FittedModels models = fit_all(train, local);
      ModelSuite suite{&models.pca, &models.tpca, &models.gbar};
      SuiteResult res = evaluate_suite(suite, test, opts);
      for (const auto& row : res.report.rows)
        cells[{size, row.n, row.model, row.metric}].push_back({row.e_av, row.e_wc});
    }
  }

  std::ofstream os(dir / "sweep.csv");
  write_csv_header_comment(os, cfg);
  os << "size,model,metric,n,e_av_mean,e_av_se,e_wc_mean,e_wc_se,realizations\n";
  char buf[256];
  for (const auto& [key, vals] : cells) {
    double av = 0, wc = 0;
    for (auto [a, w] : vals) {
      av += a;
      wc += w;
    }
    const int m = static_cast<int>(vals.size());
    av /= m;
    wc /= m;
    double va = 0, vw = 0;
    for (auto [a, w] : vals) {
      va += (a - av) * (a - av);
      vw += (w - wc) * (w - wc);
    }
    const double se_a = m > 1 ? std::sqrt(va / (m - 1) / m) : 0.0;
    const double se_w = m > 1 ? std::sqrt(vw / (m - 1) / m) : 0.0;
    std::snprintf(buf, sizeof buf, "%d,%s,%s,%d,%.17g,%.17g,%.17g,%.17g,%d\n", key.size,
                  key.model.c_str(), key.metric.c_str(), key.n, av, se_a, wc, se_w, m);
    os << buf;
  }
  return dir / "sweep.csv";
}

std::filesystem::path runtime_report(const ExperimentConfig& cfg) {
  if (cfg.family != Family::burgers_viscous)
    throw ConfigError("runtime_report requires family = burgers_viscous");
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  std::filesystem::create_directories(dir);
  const ProblemFamily fam = cfg.problem_family();

  SnapshotSet train = sample_training_set(fam, cfg.train_size, cfg.train_seed);
  SnapshotSet test = sample_training_set(fam, cfg.test_size, cfg.test_seed);
  ExperimentConfig local = cfg;
  local.gbar_n_max = std::max(cfg.gbar_n_max, cfg.runtime_rank);
  FittedModels models = fit_all(train, local);

  EvaluateOptions opts;
  opts.ranks = {cfg.runtime_rank};
  opts.metrics = {"l2", "w2"};  // pca carries its ratios on the l2 rows
  opts.interp = cfg.interp;
  opts.policy = cfg.repair;
  opts.with_runtime = true;
  opts.runtime_repeats = cfg.runtime_repeats;
  ModelSuite suite{&models.pca, &models.tpca, &models.gbar};
  SuiteResult res = evaluate_suite(suite, test, opts);

  {
    std::ofstream os(dir / "runtime.csv");
    write_csv_header_comment(os, cfg);
    res.report.write_csv(os);
  }
  {
    std::ofstream os(dir / "runtime_vs_t.csv");
    write_csv_header_comment(os, cfg);
    os << "t,hf_seconds";
    for (const auto& m : res.online_models) os << "," << m;
    os << "\n";
    char buf[64];
    for (int i = 0; i < test.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g", test.params(i, 0),
                    res.hf_seconds[i]);
      os << buf;
      for (Eigen::Index c = 0; c < res.online_seconds.cols(); ++c) {
        std::snprintf(buf, sizeof buf, ",%.10g", res.online_seconds(i, c));
        os << buf;
      }
      os << "\n";
    }
  }
  return dir / "runtime.csv";
}

bool check_thresholds(const ExperimentConfig& cfg, const ErrorReport& report,
                      std::ostream& log) {
  bool ok = true;
  for (const auto& t : cfg.thresholds) {
    const ErrorRow* row = report.find(t.model, t.metric, t.n);
    if (!row) {
      log << "[threshold] MISSING " << t.model << "." << t.metric << ".n" << t.n << "\n";
      ok = false;
      continue;
    }
    const double v = t.stat == "e_av" ? row->e_av : row->e_wc;
    const bool pass = v <= t.bound;
    log << "[threshold] " << (pass ? "pass" : "FAIL") << " " << t.model << "."
        << t.metric << ".n" << t.n << "." << t.stat << " = " << v
        << (pass ? " <= " : " > ") << t.bound << "\n";
    ok = ok && pass;
  }
  return ok;
}

}  // namespace wrom
