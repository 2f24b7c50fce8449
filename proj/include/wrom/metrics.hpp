#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "wrom/measure.hpp"

namespace wrom {

/// P1 FEM discretization of the Dirichlet Laplacian on [x0, x1].
struct FemMesh {
  double x0 = 0.0, x1 = 1.0;
  int n_elems = 1000;

  FemMesh() = default;
  FemMesh(double a, double b, int n) : x0(a), x1(b), n_elems(n) {
    if (!(x0 < x1) || n_elems < 2) throw ConfigError("FemMesh: bad interval/size");
  }
  double h() const { return (x1 - x0) / n_elems; }
};

/// H^-1 (dual of H^1_0) norm of a piecewise-constant-per-element function:
/// solve -phi'' = f with P1 elements, return sqrt(integral of f * phi).
double hminus1_norm(const FemMesh& mesh, const Eigen::VectorXd& f_elems);

/// Mass-conservative resampling of a cell-averaged field onto another grid
/// covering the same interval.
Eigen::VectorXd resample_cells(const SpatialGrid& from, const Eigen::VectorXd& values,
                               const SpatialGrid& to);

/// Grid-weighted L2 norm of the density difference (finer grid wins).
double l2_error(const DensityField& u, const DensityField& v);

/// H^-1 norm of the density difference via the FEM mesh.
double hminus1_error(const DensityField& u, const DensityField& v, const FemMesh& mesh);

struct ErrorRow {
  std::string model;   // pca | tpca-proj | tpca-interp | gbar-proj | gbar-interp
  std::string metric;  // l2 | w2 | hm1
  int n = 0;
  double e_av = 0.0;  // root mean square over the test set
  double e_wc = 0.0;  // max over the test set
  double runtime_ratio_mean = std::numeric_limits<double>::quiet_NaN();
  double runtime_ratio_median = std::numeric_limits<double>::quiet_NaN();
};

struct ErrorReport {
  std::vector<ErrorRow> rows;

  const ErrorRow* find(const std::string& model, const std::string& metric, int n) const;
  void write_csv(std::ostream& os) const;
};

}  // namespace wrom
