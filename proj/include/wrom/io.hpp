#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <string>

#include "wrom/gbar.hpp"
#include "wrom/pca.hpp"
#include "wrom/snapshots.hpp"
#include "wrom/tpca.hpp"

namespace wrom {

/// Quantile vector batch: "WQB1", u32 n_quad, u32 count,
/// f64 x_min, f64 x_max, then count*n_quad little-endian doubles.
struct QuantileBatch {
  int n_quad = 0;
  double x_min = 0, x_max = 0;
  Eigen::MatrixXd rows;
};

void write_quantile_batch(const std::filesystem::path& path, const QuantileBatch& b);
QuantileBatch read_quantile_batch(const std::filesystem::path& path);

/// Named f64 matrices in one file: "WARR", u32 count, then per array
/// u16 name length, name bytes, u32 rows, u32 cols, data.
using ArrayMap = std::map<std::string, Eigen::MatrixXd>;

void write_arrays(const std::filesystem::path& path, const ArrayMap& arrays);
ArrayMap read_arrays(const std::filesystem::path& path);

/// Snapshot archive directory: manifest.json + binary arrays.
void save_snapshot_set(const std::filesystem::path& dir, const SnapshotSet& set);
SnapshotSet load_snapshot_set(const std::filesystem::path& dir);

void save_pca(const std::filesystem::path& path, const PcaModel& m);
PcaModel load_pca(const std::filesystem::path& path);

void save_tpca(const std::filesystem::path& path, const TpcaModel& m);
TpcaModel load_tpca(const std::filesystem::path& path);

void save_gbar(const std::filesystem::path& path, const GbarDictionary& d);
GbarDictionary load_gbar(const std::filesystem::path& path);

}  // namespace wrom
