#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "wrom/measure.hpp"

namespace wrom {

struct OptimalWeightsResult {
  BarycentricWeights weights;
  double residual = 0.0;          // achieved W2 distance to the barycenter
  int iterations = 0;
  double kkt_violation = 0.0;     // max KKT defect, scaled by ||G||_inf
  std::vector<double> residual_history;  // filled on solver failure
};

/// min over the simplex of lambda' G lambda - 2 b' lambda, by a primal
/// active-set method. G must be symmetric positive semidefinite.
/// warm, when given, seeds the working set.
Eigen::VectorXd simplex_lsq(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
                            const Eigen::VectorXd* warm = nullptr,
                            int* iterations = nullptr,
                            double* kkt_violation = nullptr);

/// Optimal barycentric weights of target against dict in W2.
OptimalWeightsResult optimal_weights(const QuantileFunction& target,
                                     std::span<const QuantileFunction> dict,
                                     const Eigen::VectorXd* warm = nullptr);

/// Euclidean projection onto the probability simplex (sort-based).
Eigen::VectorXd project_to_simplex(Eigen::VectorXd v);

}  // namespace wrom
