#include <array>
#include <cmath>

#include "wrom/snapshots.hpp"

namespace wrom {

namespace {

using State = std::array<double, 4>;  // q1, q2, p1, p2

State rhs(const State& s, double alpha) {
  const double d = s[0] - s[1];
  const double e = std::exp(-std::abs(d) / alpha);
  const double sgn = (d > 0) - (d < 0);
  const double g = 0.5 * s[2] * s[3] * sgn * e / alpha;
  return {0.5 * (s[2] + s[3] * e), 0.5 * (s[3] + s[2] * e), g, -g};
}

double hamiltonian(const State& s, double alpha) {
  const double e = std::exp(-std::abs(s[0] - s[1]) / alpha);
  return 0.25 * (s[2] * s[2] + s[3] * s[3] + 2.0 * s[2] * s[3] * e);
}

// Dormand-Prince 5(4) coefficients
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                 B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

}  // namespace

PeakonState peakon_evolve(double q10, double t_end, const PeakonSettings& cfg) {
  State y{q10, cfg.q2, cfg.p1, cfg.p2};
  const double h0 = hamiltonian(y, cfg.alpha);
  const double mom0 = y[2] + y[3];
  double max_dh = 0.0, max_dp = 0.0;

  double t = 0.0;
  double dt = std::min(0.1, t_end > 0 ? t_end : 0.1);
  const double tol = cfg.tol;
  int rejected_in_a_row = 0;

  auto axpy = [](const State& a, double c, const State& b) {
    return State{a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2], a[3] + c * b[3]};
  };

  while (t < t_end - 1e-14 * std::max(1.0, t_end)) {
    dt = std::min(dt, t_end - t);
    const State k1 = rhs(y, cfg.alpha);
    const State k2 = rhs(axpy(y, dt * A21, k1), cfg.alpha);
    State s = y;
    s = axpy(s, dt * A31, k1);
    s = axpy(s, dt * A32, k2);
    const State k3 = rhs(s, cfg.alpha);
    s = y;
    s = axpy(s, dt * A41, k1);
    s = axpy(s, dt * A42, k2);
    s = axpy(s, dt * A43, k3);
    const State k4 = rhs(s, cfg.alpha);
    s = y;
    s = axpy(s, dt * A51, k1);
    s = axpy(s, dt * A52, k2);
    s = axpy(s, dt * A53, k3);
    s = axpy(s, dt * A54, k4);
    const State k5 = rhs(s, cfg.alpha);
    s = y;
    s = axpy(s, dt * A61, k1);
    s = axpy(s, dt * A62, k2);
    s = axpy(s, dt * A63, k3);
    s = axpy(s, dt * A64, k4);
    s = axpy(s, dt * A65, k5);
    const State k6 = rhs(s, cfg.alpha);

    State y5 = y;
    y5 = axpy(y5, dt * B1, k1);
    y5 = axpy(y5, dt * B3, k3);
    y5 = axpy(y5, dt * B4, k4);
    y5 = axpy(y5, dt * B5, k5);
    y5 = axpy(y5, dt * B6, k6);
    const State k7 = rhs(y5, cfg.alpha);

    double err = 0.0;
    const State ks[6] = {k1, k3, k4, k5, k6, k7};
    const double es[6] = {E1, E3, E4, E5, E6, E7};
    for (int i = 0; i < 4; ++i) {
      double e = 0.0;
      for (int j = 0; j < 6; ++j) e += es[j] * ks[j][i];
      e *= dt;
      const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }

    if (err <= 1.0) {
      t += dt;
      y = y5;
      max_dh = std::max(max_dh,
                        std::abs(hamiltonian(y, cfg.alpha) - h0) / std::abs(h0));
      max_dp = std::max(max_dp, std::abs(y[2] + y[3] - mom0) / std::abs(mom0));
      rejected_in_a_row = 0;
    } else if (++rejected_in_a_row > 50) {
      throw SolverFailureError("peakon integrator cannot meet tolerance");
    }
    const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    dt *= fac;
  }

  PeakonState out;
  out.q1 = y[0];
  out.q2 = y[1];
  out.p1 = y[2];
  out.p2 = y[3];
  out.hamiltonian_drift = max_dh;
  out.momentum_drift = max_dp;
  return out;
}

DiscreteMeasure camassa_holm_snapshot(double q10, double t, const ProblemFamily& fam,
                                      PeakonState* state) {
  PeakonState st = peakon_evolve(q10, t, fam.peakon);
  if (state) *state = st;
  const SpatialGrid& g = fam.grid;
  Eigen::VectorXd rho(g.n_cells);
  const double a = fam.peakon.alpha;
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.center(i);
    rho[i] = 0.5 * (st.p1 * std::exp(-std::abs(x - st.q1) / a) +
                    st.p2 * std::exp(-std::abs(x - st.q2) / a));
  }
  return DiscreteMeasure(g, std::move(rho));
}

}  // namespace wrom
