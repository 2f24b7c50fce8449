#include "wrom/pca.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace wrom {

PcaModel pca_fit(const SnapshotSet& snapshots, bool centered) {
  const int n = snapshots.size();
  if (n < 2) throw ConfigError("pca_fit: need at least 2 snapshots");
  const SpatialGrid& grid = snapshots.family.grid;
  const double sqw = std::sqrt(grid.dx());

  // physical densities, scaled so Euclidean = grid-weighted L2
  Eigen::MatrixXd X = snapshots.densities.array().colwise() * snapshots.masses.array();
  PcaModel model;
  model.grid = grid;
  model.centered = centered;
  if (centered) {
    model.mean = X.colwise().mean().transpose();
    X.rowwise() -= model.mean.transpose();
  } else {
    model.mean = Eigen::VectorXd::Zero(grid.n_cells);
  }
  X *= sqw;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  model.sigma = svd.singularValues();
  model.modes = svd.matrixV().transpose() / sqw;
  model.coeffs = svd.matrixU() * model.sigma.asDiagonal();
  model.params = snapshots.params;
  return model;
}

DensityField pca_project(const PcaModel& model, const DensityField& u, int n) {
  if (n < 0 || n > model.rank()) throw ConfigError("pca_project: rank out of range");
  if (!(u.grid == model.grid)) throw GridMismatchError("pca_project: grid mismatch");
  const double dx = model.grid.dx();
  Eigen::VectorXd centered = u.values - model.mean;
  Eigen::VectorXd recon = model.mean;
  if (n > 0) {
    const Eigen::VectorXd c = model.modes.topRows(n) * centered * dx;
    recon += model.modes.topRows(n).transpose() * c;
  }
  return {model.grid, std::move(recon)};
}

double pca_projection_error_sq(const PcaModel& model, const DensityField& u, int n) {
  DensityField p = pca_project(model, u, n);
  return (u.values - p.values).squaredNorm() * model.grid.dx();
}

}  // namespace wrom
