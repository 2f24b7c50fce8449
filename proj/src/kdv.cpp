#include <cmath>
#include <limits>

#include "wrom/snapshots.hpp"

namespace wrom {

// tau = 1 + A1 e^{2 th1} + A2 e^{2 th2} + A1 A2 D^2 e^{2 th1 + 2 th2},
// th_i = k_i x - k_i^3 t, A_i = c_i^2/(2 k_i), D = (k1-k2)/(k1+k2).
// With tau = sum w_a e^{phi_a} (phi_a linear in x, slope s_a),
//   2 (log tau)'' = 2 [sum_{a<b} w_a w_b (s_a-s_b)^2 e^{phi_a+phi_b}] / tau^2,
// every term nonnegative; the largest exponent is factored out so nothing
// overflows for any box parameter.
Eigen::VectorXd kdv_density_raw(double k1, double k2, double c1, double c2,
                                double t, const SpatialGrid& grid) {
  const double neg_inf = -std::numeric_limits<double>::infinity();
  const double A1 = c1 * c1 / (2.0 * k1);
  const double A2 = c2 * c2 / (2.0 * k2);
  const double D = (k1 - k2) / (k1 + k2);
  const double w[4] = {1.0, A1, A2, A1 * A2 * D * D};
  const double slope[4] = {0.0, 2.0 * k1, 2.0 * k2, 2.0 * (k1 + k2)};
  const double shift[4] = {0.0, -2.0 * k1 * k1 * k1 * t, -2.0 * k2 * k2 * k2 * t,
                           -2.0 * (k1 * k1 * k1 + k2 * k2 * k2) * t};
  double logw[4];
  for (int a = 0; a < 4; ++a) logw[a] = w[a] > 0.0 ? std::log(w[a]) : neg_inf;

  Eigen::VectorXd rho(grid.n_cells);
  for (int i = 0; i < grid.n_cells; ++i) {
    const double x = grid.center(i);
    double phi[4], mx = neg_inf;
    for (int a = 0; a < 4; ++a) {
      phi[a] = logw[a] + slope[a] * x + shift[a];
      mx = std::max(mx, phi[a]);
    }
    double e[4], den = 0.0;
    for (int a = 0; a < 4; ++a) {
      e[a] = std::exp(phi[a] - mx);
      den += e[a];
    }
    double num = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const double ds = slope[a] - slope[b];
        num += ds * ds * e[a] * e[b];
      }
    rho[i] = 2.0 * num / (den * den);
  }
  return rho;
}

DiscreteMeasure kdv_snapshot(double k2, double t, const ProblemFamily& fam) {
  const double k1 = 30.0 - k2;
  Eigen::VectorXd rho = kdv_density_raw(k1, k2, 2.0, 1.5, t, fam.grid);
  return DiscreteMeasure(fam.grid, std::move(rho));
}

}  // namespace wrom
