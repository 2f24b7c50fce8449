#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "wrom/experiment.hpp"
#include "wrom/io.hpp"

namespace {

using namespace wrom;

// flags shared by most subcommands; they override values from --config
struct CommonArgs {
  std::string config_path;
  std::string family;
  long train_size = -1;
  long test_size = -1;
  long train_seed = -1;
  long test_seed = -1;
  long n_quad = -1;
  long n_cells = -1;
  std::string ranks;
  std::string output;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config_path, "experiment config file (ini sections)");
  cmd->add_option("--family", a.family,
                  "transport|burgers_inviscid|burgers_viscous|camassa_holm|kdv");
  cmd->add_option("--train-size", a.train_size, "training snapshot count");
  cmd->add_option("--test-size", a.test_size, "test snapshot count");
  cmd->add_option("--train-seed", a.train_seed, "training sampling seed");
  cmd->add_option("--test-seed", a.test_seed, "test sampling seed");
  cmd->add_option("--n-quad", a.n_quad, "quantile quadrature nodes");
  cmd->add_option("--n-cells", a.n_cells, "spatial cells (0 = family default)");
  cmd->add_option("--ranks", a.ranks, "comma/space separated rank list");
  cmd->add_option("--output", a.output,
                  "output directory (relative paths resolve under $WROM_OUTPUT_ROOT)");
}

ExperimentConfig build_config(const CommonArgs& a) {
  ExperimentConfig cfg;
  if (!a.config_path.empty()) cfg = ExperimentConfig::load(a.config_path);
  if (!a.family.empty()) cfg.family = family_from_name(a.family);
  if (a.train_size >= 0) cfg.train_size = static_cast<int>(a.train_size);
  if (a.test_size >= 0) cfg.test_size = static_cast<int>(a.test_size);
  if (a.train_seed >= 0) cfg.train_seed = static_cast<std::uint64_t>(a.train_seed);
  if (a.test_seed >= 0) cfg.test_seed = static_cast<std::uint64_t>(a.test_seed);
  if (a.n_quad > 0) cfg.n_quad = static_cast<int>(a.n_quad);
  if (a.n_cells >= 0) cfg.n_cells = static_cast<int>(a.n_cells);
  if (!a.output.empty()) cfg.output = a.output;
  if (!a.ranks.empty()) {
    std::string s = a.ranks;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream is(s);
    cfg.ranks.clear();
    int r;
    while (is >> r) cfg.ranks.push_back(r);
    if (cfg.ranks.empty()) throw ConfigError("--ranks: empty list");
    std::sort(cfg.ranks.begin(), cfg.ranks.end());
  }
  return cfg;
}

int cmd_generate(const CommonArgs& a) {
  ExperimentConfig cfg = build_config(a);
  const ProblemFamily fam = cfg.problem_family();
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  SnapshotSet train = sample_training_set(fam, cfg.train_size, cfg.train_seed);
  save_snapshot_set(dir / "train", train);
  SnapshotSet test = sample_training_set(fam, cfg.test_size, cfg.test_seed);
  save_snapshot_set(dir / "test", test);
  std::cout << "archived " << train.size() << "+" << test.size() << " snapshots under "
            << dir << "\n";
  return 0;
}

int cmd_fit(const CommonArgs& a, long gbar_n_max) {
  ExperimentConfig cfg = build_config(a);
  if (gbar_n_max > 0) cfg.gbar_n_max = static_cast<int>(gbar_n_max);
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  SnapshotSet train;
  if (std::filesystem::exists(dir / "train" / "manifest.json")) {
    train = load_snapshot_set(dir / "train");
  } else {
    train = sample_training_set(cfg.problem_family(), cfg.train_size, cfg.train_seed);
    save_snapshot_set(dir / "train", train);
  }
  FittedModels models = fit_all(train, cfg);
  std::filesystem::create_directories(dir / "models");
  save_pca(dir / "models" / "pca.bin", models.pca);
  save_tpca(dir / "models" / "tpca.bin", models.tpca);
  save_gbar(dir / "models" / "gbar.bin", models.gbar);
  std::cout << "fitted pca/tpca/gbar on " << train.size() << " snapshots -> "
            << (dir / "models") << "\n";
  return 0;
}

int cmd_evaluate(const CommonArgs& a) {
  ExperimentConfig cfg = build_config(a);
  const auto dir = run_experiment(cfg);
  std::cout << "experiment archive: " << dir << "\n";
  std::ifstream csv(dir / "errors.csv");
  std::string line;
  std::getline(csv, line);  // comment header
  while (std::getline(csv, line)) std::cout << line << "\n";

  ErrorReport report;
  // reread rows for threshold checking
  {
    std::ifstream is(dir / "errors.csv");
    std::string l;
    std::getline(is, l);
    std::getline(is, l);  // column header
    while (std::getline(is, l)) {
      ErrorRow r;
      char model[64], metric[16];
      if (std::sscanf(l.c_str(), "%63[^,],%15[^,],%d,%lg,%lg", model, metric, &r.n,
                      &r.e_av, &r.e_wc) == 5) {
        r.model = model;
        r.metric = metric;
        report.rows.push_back(r);
      }
    }
  }
  if (!check_thresholds(cfg, report, std::cout)) return 1;
  return 0;
}

int cmd_sweep(const CommonArgs& a) {
  ExperimentConfig cfg = build_config(a);
  const auto csv = run_size_sweep(cfg);
  std::cout << "sweep table: " << csv << "\n";
  return 0;
}

int cmd_runtime(const CommonArgs& a, long rank) {
  ExperimentConfig cfg = build_config(a);
  if (rank > 0) cfg.runtime_rank = static_cast<int>(rank);
  const auto csv = runtime_report(cfg);
  std::cout << "runtime table: " << csv << "\n";
  return 0;
}

int cmd_report(const CommonArgs& a) {
  ExperimentConfig cfg = build_config(a);
  const auto dir = resolve_output_dir(cfg) / family_name(cfg.family);
  const auto path = dir / "errors.csv";
  std::ifstream is(path);
  if (!is) {
    std::cerr << "no errors.csv under " << dir << "; run `wrom evaluate` first\n";
    return 1;
  }
  ErrorReport report;
  std::string l;
  while (std::getline(is, l)) {
    if (l.empty() || l[0] == '#' || l.rfind("model,", 0) == 0) continue;
    ErrorRow r;
    char model[64], metric[16];
    if (std::sscanf(l.c_str(), "%63[^,],%15[^,],%d,%lg,%lg", model, metric, &r.n,
                    &r.e_av, &r.e_wc) == 5) {
      r.model = model;
      r.metric = metric;
      report.rows.push_back(r);
    }
  }
  for (const auto& r : report.rows)
    std::cout << r.model << " " << r.metric << " n=" << r.n << " e_av=" << r.e_av
              << " e_wc=" << r.e_wc << "\n";
  if (!check_thresholds(cfg, report, std::cout)) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wasserstein reduced-order models for 1D conservative PDEs"};
  app.require_subcommand(1);

  CommonArgs args;
  long gbar_n_max = -1, runtime_rank = -1;

  auto* generate = app.add_subcommand("generate", "sample and archive snapshot sets");
  add_common(generate, args);
  auto* fit = app.add_subcommand("fit", "fit pca/tpca/gbar models on the training set");
  add_common(fit, args);
  fit->add_option("--gbar-n-max", gbar_n_max, "greedy dictionary size cap");
  auto* evaluate = app.add_subcommand(
      "evaluate", "full pipeline: generate, fit, error tables, plots, dumps");
  add_common(evaluate, args);
  auto* sweep = app.add_subcommand("sweep", "training-set-size sweep");
  add_common(sweep, args);
  auto* runtime = app.add_subcommand("runtime", "online/high-fidelity runtime ratios");
  add_common(runtime, args);
  runtime->add_option("--rank", runtime_rank, "reduced dimension for the study");
  auto* report = app.add_subcommand("report", "print error tables, check thresholds");
  add_common(report, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(args);
    if (fit->parsed()) return cmd_fit(args, gbar_n_max);
    if (evaluate->parsed()) return cmd_evaluate(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (runtime->parsed()) return cmd_runtime(args, runtime_rank);
    if (report->parsed()) return cmd_report(args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
