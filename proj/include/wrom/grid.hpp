#pragma once

#include <cmath>

#include "wrom/errors.hpp"

namespace wrom {

/// Uniform cell grid on [x_min, x_max].
struct SpatialGrid {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 2;

  SpatialGrid() = default;
  SpatialGrid(double lo, double hi, int n) : x_min(lo), x_max(hi), n_cells(n) {
    if (!(x_min < x_max) || n_cells < 2)
      throw ConfigError("SpatialGrid: need x_min < x_max and n_cells >= 2");
  }

  double dx() const { return (x_max - x_min) / n_cells; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  double edge(int i) const { return x_min + i * dx(); }
  double length() const { return x_max - x_min; }

  /// Cell index containing x, clamped to [0, n_cells-1].
  int cell_of(double x) const {
    int i = static_cast<int>(std::floor((x - x_min) / dx()));
    if (i < 0) i = 0;
    if (i >= n_cells) i = n_cells - 1;
    return i;
  }

  bool operator==(const SpatialGrid&) const = default;
};

/// Midpoint quadrature nodes s_j = (j + 1/2)/n in (0,1), uniform weights 1/n.
struct QuantileGrid {
  int n_quad = 1024;

  QuantileGrid() = default;
  explicit QuantileGrid(int n) : n_quad(n) {
    if (n_quad < 1) throw ConfigError("QuantileGrid: n_quad >= 1");
  }

  double node(int j) const { return (j + 0.5) / n_quad; }
  double weight() const { return 1.0 / n_quad; }

  bool operator==(const QuantileGrid&) const = default;
};

}  // namespace wrom
