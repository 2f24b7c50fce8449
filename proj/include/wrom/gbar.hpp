#pragma once

#include <Eigen/Core>
#include <vector>

#include "wrom/rbf.hpp"
#include "wrom/simplex_qp.hpp"
#include "wrom/snapshots.hpp"

namespace wrom {

/// Greedily selected snapshot dictionary with per-training-parameter optimal
/// barycentric weights for every prefix size.
struct GbarDictionary {
  QuantileGrid qgrid;
  SpatialGrid grid;
  std::vector<int> selected;                  // training indices, selection order
  Eigen::MatrixXd atom_params;                // n x p
  Eigen::MatrixXd atom_icdfs;                 // n x n_quad
  std::vector<Eigen::MatrixXd> weight_tables; // k = 1..n: N x k
  Eigen::VectorXd residual_history;           // max W2 residual at prefix k
  Eigen::MatrixXd params;                     // N x p training parameters

  int size() const { return static_cast<int>(selected.size()); }
};

struct GbarReconstruction {
  QuantileFunction icdf;
  DiscreteMeasure measure;
  BarycentricWeights weights;
  double residual = 0.0;  // NaN for the interpolation variant
};

/// Offline greedy: init with the W2-farthest snapshot pair, then repeatedly
/// add the training snapshot with the largest optimal-barycenter residual.
/// Stops at n_max atoms or when the max residual drops below eps.
GbarDictionary gbar_fit(const SnapshotSet& snapshots, int n_max, double eps = 0.0);

GbarReconstruction gbar_project(const GbarDictionary& dict, const QuantileFunction& u,
                                int n);

GbarReconstruction gbar_interpolate(const GbarDictionary& dict, const Eigen::VectorXd& z,
                                    int n, const InterpSettings& settings);

GbarReconstruction gbar_interpolate(const GbarDictionary& dict,
                                    const RbfLocalInterpolator& interp, int n);

}  // namespace wrom
