#pragma once

#include <Eigen/Core>

#include "wrom/snapshots.hpp"

namespace wrom {

/// Linear PCA/POD of raw densities in the grid-weighted L2(Omega) inner
/// product. Modes are rows, orthonormal in that inner product.
struct PcaModel {
  SpatialGrid grid;
  bool centered = false;
  Eigen::VectorXd mean;    // zero when not centered
  Eigen::MatrixXd modes;   // r x n_cells
  Eigen::VectorXd sigma;   // r, nonincreasing
  Eigen::MatrixXd coeffs;  // N x r
  Eigen::MatrixXd params;  // N x p

  int rank() const { return static_cast<int>(sigma.size()); }
};

PcaModel pca_fit(const SnapshotSet& snapshots, bool centered = false);

/// Orthogonal projection of the (physical) density onto the first n modes.
/// Reconstructions may be signed.
DensityField pca_project(const PcaModel& model, const DensityField& u, int n);

/// Squared L2 projection error of a density at rank n.
double pca_projection_error_sq(const PcaModel& model, const DensityField& u, int n);

}  // namespace wrom
