#include "wrom/simplex_qp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace wrom {

namespace {

// Equality-constrained step on the free set: solve
//   [2 G_FF  1] [x ]   [2 b_F]
//   [1'      0] [mu] = [1    ]
// Returns x and the multiplier; adds a tiny ridge if the KKT matrix is singular.
bool eq_step(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
             const std::vector<int>& free, double ridge_scale,
             Eigen::VectorXd& x, double& mu) {
  const int m = static_cast<int>(free.size());
  Eigen::MatrixXd K(m + 1, m + 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) K(r, c) = 2.0 * G(free[r], free[c]);
    K(r, m) = 1.0;
    K(m, r) = 1.0;
  }
  K(m, m) = 0.0;
  Eigen::VectorXd rhs(m + 1);
  for (int r = 0; r < m; ++r) rhs[r] = 2.0 * b[free[r]];
  rhs[m] = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible()) {
    for (int r = 0; r < m; ++r) K(r, r) += ridge_scale;
    lu.compute(K);
    if (!lu.isInvertible()) return false;
  }
  Eigen::VectorXd sol = lu.solve(rhs);
  x = sol.head(m);
  mu = sol[m];
  return true;
}

}  // namespace

Eigen::VectorXd simplex_lsq(const Eigen::MatrixXd& G, const Eigen::VectorXd& b,
                            const Eigen::VectorXd* warm, int* iterations,
                            double* kkt_violation) {
  const int n = static_cast<int>(G.rows());
  if (n == 0) throw SolverFailureError("empty dictionary in simplex_lsq");
  if (n == 1) {
    if (iterations) *iterations = 0;
    if (kkt_violation) *kkt_violation = 0.0;
    return Eigen::VectorXd::Ones(1);
  }

  const double norm_g = std::max(G.cwiseAbs().maxCoeff(), 1e-300);
  const double feas_tol = 1e-12;
  const double opt_tol = 1e-11 * (1.0 + norm_g);
  const double ridge = 1e-13 * (1.0 + norm_g);

  Eigen::VectorXd lambda;
  if (warm && warm->size() == n && warm->minCoeff() > -1e-9) {
    lambda = warm->cwiseMax(0.0);
    const double s = lambda.sum();
    lambda = (s > 0) ? Eigen::VectorXd(lambda / s)
                     : Eigen::VectorXd(Eigen::VectorXd::Constant(n, 1.0 / n));
  } else {
    lambda = Eigen::VectorXd::Constant(n, 1.0 / n);
  }

  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (lambda[i] > feas_tol) free.push_back(i);
  if (free.empty()) free.push_back(0);

  const int cap = std::max(100, 10 * n * n);
  std::vector<double> objective_history;
  Eigen::VectorXd x;
  double mu = 0.0;

  for (int it = 1; it <= cap; ++it) {
    if (!eq_step(G, b, free, ridge, x, mu))
      throw SolverFailureError("singular KKT system in simplex_lsq");

    bool interior = true;
    for (int r = 0; r < static_cast<int>(free.size()); ++r)
      if (x[r] < -feas_tol) interior = false;

    if (interior) {
      lambda.setZero();
      double s = 0.0;
      for (int r = 0; r < static_cast<int>(free.size()); ++r) {
        lambda[free[r]] = std::max(x[r], 0.0);
        s += lambda[free[r]];
      }
      lambda /= s;

      // bound multipliers: want g_i >= nu on the zero set, g = 2(G lambda - b)
      const Eigen::VectorXd g = 2.0 * (G * lambda - b);
      const double nu = -mu;
      double viol = 0.0;
      int worst = -1;
      std::vector<char> is_free(n, 0);
      for (int f : free) is_free[f] = 1;
      for (int i = 0; i < n; ++i) {
        if (is_free[i]) continue;
        const double v = nu - g[i];
        if (v > viol) {
          viol = v;
          worst = i;
        }
      }
      if (viol <= opt_tol) {
        if (iterations) *iterations = it;
        if (kkt_violation) {
          double inner = 0.0;
          for (int f : free)
            if (lambda[f] > feas_tol) inner = std::max(inner, std::abs(g[f] - nu));
          *kkt_violation = std::max(inner, viol);
        }
        return lambda;
      }
      free.push_back(worst);
      std::sort(free.begin(), free.end());
    } else {
      // step toward x until the first coordinate hits zero, drop it
      double alpha = 1.0;
      int block = -1;
      for (int r = 0; r < static_cast<int>(free.size()); ++r) {
        if (x[r] < 0.0) {
          const double lr = lambda[free[r]];
          const double a = lr / (lr - x[r]);
          if (a < alpha) {
            alpha = a;
            block = r;
          }
        }
      }
      for (int r = 0; r < static_cast<int>(free.size()); ++r) {
        const int i = free[r];
        lambda[i] += alpha * (x[r] - lambda[i]);
        if (lambda[i] < 0) lambda[i] = 0.0;
      }
      if (block >= 0) {
        lambda[free[block]] = 0.0;
        free.erase(free.begin() + block);
      }
      if (free.empty()) {
        int imax = 0;
        lambda.maxCoeff(&imax);
        free.push_back(imax);
      }
    }
    objective_history.push_back(lambda.dot(G * lambda) - 2.0 * b.dot(lambda));
  }

  std::ostringstream msg;
  msg << "simplex_lsq: no convergence after " << cap << " iterations; objective history:";
  const size_t keep = std::min<size_t>(8, objective_history.size());
  for (size_t k = objective_history.size() - keep; k < objective_history.size(); ++k)
    msg << " " << objective_history[k];
  throw SolverFailureError(msg.str());
}

OptimalWeightsResult optimal_weights(const QuantileFunction& target,
                                     std::span<const QuantileFunction> dict,
                                     const Eigen::VectorXd* warm) {
  if (dict.empty()) throw SolverFailureError("optimal_weights: empty dictionary");
  const int n = static_cast<int>(dict.size());
  const auto& qg = target.qgrid();
  for (const auto& f : dict) detail::require_same_qgrid(qg, f.qgrid());

  const double w = qg.weight();
  Eigen::MatrixXd G(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    b[i] = w * dict[i].values().dot(target.values());
    for (int j = 0; j <= i; ++j) {
      G(i, j) = w * dict[i].values().dot(dict[j].values());
      G(j, i) = G(i, j);
    }
  }

  OptimalWeightsResult out;
  Eigen::VectorXd lambda =
      simplex_lsq(G, b, warm, &out.iterations, &out.kkt_violation);

  Eigen::VectorXd combo = Eigen::VectorXd::Zero(target.values().size());
  for (int i = 0; i < n; ++i) combo += lambda[i] * dict[i].values();
  out.residual = std::sqrt((target.values() - combo).squaredNorm() * w);
  out.weights = BarycentricWeights{std::move(lambda)};
  return out;
}

Eigen::VectorXd project_to_simplex(Eigen::VectorXd v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double acc = 0.0, tau = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    acc += u[j];
    const double t = (1.0 - acc) / (j + 1);
    if (u[j] + t > 0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  for (int i = 0; i < n; ++i) v[i] = std::max(v[i] + tau, 0.0);
  return v;
}

}  // namespace wrom
