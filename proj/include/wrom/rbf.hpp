#pragma once

#include <Eigen/Core>
#include <vector>

#include "wrom/errors.hpp"

namespace wrom {

/// Local multiquadric interpolation settings for coefficient maps z -> c(z).
struct InterpSettings {
  enum class Policy { knn, ball };
  Policy policy = Policy::knn;
  int neighbors = 10;       // knn count r
  double radius = 0.0;      // ball policy tau
  double ridge = 1e-10;     // regularization on the RBF block
};

struct RbfPrediction {
  double value = 0.0;
  bool nearest_neighbor_fallback = false;
};

/// Shared-neighborhood interpolator: selects neighbors of the query once,
/// factors the multiquadric system (phi(r) = sqrt(r^2 + c^2), linear
/// polynomial tail when the point set supports it), then predicts any number
/// of value columns at O(neighbors) each.
class RbfLocalInterpolator {
 public:
  /// points: N x p training parameters. Throws NeighborhoodFailureError when
  /// no neighbor qualifies under the policy.
  RbfLocalInterpolator(const Eigen::MatrixXd& points, const Eigen::VectorXd& query,
                       const InterpSettings& settings);

  /// values over ALL training points (length N); only neighbor entries enter.
  RbfPrediction predict(const Eigen::VectorXd& values) const;

  const std::vector<int>& neighbor_indices() const { return idx_; }
  bool degenerate() const { return singular_; }

 private:
  std::vector<int> idx_;
  Eigen::VectorXd weights_;  // interpolation weights on neighbor values
  int exact_match_ = -1;     // neighbor coinciding with the query
  int nearest_ = 0;          // position of the nearest neighbor in idx_
  bool singular_ = false;
};

/// One-off convenience wrapper around RbfLocalInterpolator.
RbfPrediction rbf_fit_predict(const Eigen::MatrixXd& points,
                              const Eigen::VectorXd& values,
                              const Eigen::VectorXd& query,
                              const InterpSettings& settings);

}  // namespace wrom
