#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "wrom/measure.hpp"
#include "wrom/rbf.hpp"
#include "wrom/snapshots.hpp"

namespace wrom {

/// Sectioned key-value file: [section] headers, key = value lines,
/// # or ; comments. Parse errors carry line numbers.
class IniFile {
 public:
  static IniFile parse_file(const std::filesystem::path& path);
  static IniFile parse_string(const std::string& text, const std::string& origin);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  long get_long(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key) const;
  const std::map<std::string, std::string>& section(const std::string& name) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> data_;
  std::string origin_;
};

struct ThresholdSpec {
  std::string model, metric, stat;  // stat: e_av | e_wc
  int n = 0;
  double bound = 0.0;
};

struct SweepSpec {
  std::vector<int> sizes;
  int realizations = 10;
  std::vector<int> ranks = {10};
};

struct ExperimentConfig {
  Family family = Family::transport;
  int train_size = 200;
  std::uint64_t train_seed = 42;
  int test_size = 500;
  std::uint64_t test_seed = 4242;
  int n_quad = 1024;
  int n_cells = 0;  // 0: family default
  std::vector<int> ranks = {1, 2, 4, 8, 16};
  std::vector<std::string> metrics = {"l2", "w2", "hm1"};
  MonotonePolicy repair = MonotonePolicy::rearrange;
  InterpSettings interp;
  int gbar_n_max = 0;  // 0: max of ranks
  double gbar_eps = 0.0;
  bool pca_centered = false;
  double fem_h = 1e-3;
  SweepSpec sweep;
  int runtime_rank = 20;
  int runtime_repeats = 3;
  std::filesystem::path output;  // resolved against WROM_OUTPUT_ROOT when relative
  std::vector<ThresholdSpec> thresholds;
  int dump_index = 0;                 // test snapshot used for reconstruction dumps
  std::vector<int> dump_ranks = {5, 10};

  static ExperimentConfig from_ini(const IniFile& ini);
  static ExperimentConfig load(const std::filesystem::path& path);

  ProblemFamily problem_family() const;
  std::string hash() const;  // stable digest of the configuration
};

}  // namespace wrom
