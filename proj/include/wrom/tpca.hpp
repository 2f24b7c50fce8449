#pragma once

#include <Eigen/Core>

#include "wrom/rbf.hpp"
#include "wrom/snapshots.hpp"

namespace wrom {

/// Tangent PCA at the Frechet mean: PCA of Log-mapped snapshots in the
/// quadrature L2 inner product.
struct TpcaModel {
  QuantileGrid qgrid;
  SpatialGrid grid;        // reconstruction grid, also the clamp interval
  Eigen::VectorXd w_icdf;  // Frechet mean icdf (reference point)
  Eigen::MatrixXd modes;   // r x n_quad, orthonormal in quadrature L2
  Eigen::VectorXd sigma;   // r, nonincreasing
  Eigen::MatrixXd coeffs;  // N x r,  c_k(z_i)
  Eigen::MatrixXd params;  // N x p

  int rank() const { return static_cast<int>(sigma.size()); }
};

struct TpcaReconstruction {
  QuantileFunction icdf;
  DiscreteMeasure measure;
  bool repaired = false;       // monotonicity/domain repair triggered
  double tangent_error = 0.0;  // ||Log_w(u) - f_n||, NaN for interpolation
};

TpcaModel tpca_fit(const SnapshotSet& snapshots);

TpcaReconstruction tpca_project(const TpcaModel& model, const QuantileFunction& u,
                                int n,
                                MonotonePolicy policy = MonotonePolicy::rearrange);

TpcaReconstruction tpca_interpolate(const TpcaModel& model, const Eigen::VectorXd& z,
                                    int n, const InterpSettings& settings,
                                    MonotonePolicy policy = MonotonePolicy::rearrange);

/// Interpolation against a prebuilt shared neighborhood (one factorization
/// for all modes).
TpcaReconstruction tpca_interpolate(const TpcaModel& model,
                                    const RbfLocalInterpolator& interp, int n,
                                    MonotonePolicy policy = MonotonePolicy::rearrange);

}  // namespace wrom
