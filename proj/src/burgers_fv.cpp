#include <cmath>
#include <vector>

#include "wrom/snapshots.hpp"

namespace wrom {

namespace {

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

// -d/dx of the local Lax-Friedrichs flux of f(u) = u^2/2 with piecewise
// linear minmod reconstruction, periodic
void advective_rhs(const Eigen::VectorXd& u, double dx, Eigen::VectorXd& rhs,
                   Eigen::VectorXd& flux) {
  const int n = static_cast<int>(u.size());
  auto at = [&](int i) { return u[(i % n + n) % n]; };
  // interface i+1/2 flux from states uL (cell i) and uR (cell i+1)
  for (int i = 0; i < n; ++i) {
    const double du_i = minmod(at(i + 1) - at(i), at(i) - at(i - 1));
    const double du_ip = minmod(at(i + 2) - at(i + 1), at(i + 1) - at(i));
    const double uL = at(i) + 0.5 * du_i;
    const double uR = at(i + 1) - 0.5 * du_ip;
    const double a = std::max(std::abs(uL), std::abs(uR));
    flux[i] = 0.5 * (0.5 * uL * uL + 0.5 * uR * uR) - 0.5 * a * (uR - uL);
  }
  for (int i = 0; i < n; ++i) rhs[i] = -(flux[i] - flux[(i - 1 + n) % n]) / dx;
}

// Solves (I - alpha L) x = r with L the periodic 3-point Laplacian stencil,
// via Thomas + Sherman-Morrison for the cyclic corner terms.
class CyclicDiffusionSolver {
 public:
  CyclicDiffusionSolver(int n, double alpha) : n_(n), alpha_(alpha) {
    if (alpha_ <= 0.0) return;
    const double a = -alpha_, b = 1.0 + 2.0 * alpha_;
    gamma_ = -b;
    bb_.assign(n_, b);
    bb_[0] -= gamma_;
    bb_[n_ - 1] -= a * a / gamma_;
    cp_.resize(n_);
    // prefactor the Thomas sweep for the modified diagonal
    cp_[0] = a / bb_[0];
    denom_.resize(n_);
    denom_[0] = bb_[0];
    for (int i = 1; i < n_; ++i) {
      denom_[i] = bb_[i] - a * cp_[i - 1];
      cp_[i] = a / denom_[i];
    }
    // correction vector x2 = T^-1 e, e = (gamma, 0, ..., 0, a)
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n_);
    e[0] = gamma_;
    e[n_ - 1] = a;
    x2_.resize(n_);
    thomas(e, x2_);
    corr_denom_ = 1.0 + x2_[0] + a * x2_[n_ - 1] / gamma_;
  }

  void solve(const Eigen::VectorXd& r, Eigen::VectorXd& x) const {
    if (alpha_ <= 0.0) {
      x = r;
      return;
    }
    thomas(r, x);
    const double a = -alpha_;
    const double fact = (x[0] + a * x[n_ - 1] / gamma_) / corr_denom_;
    x -= fact * x2_;
  }

  void apply_explicit(const Eigen::VectorXd& u, Eigen::VectorXd& out) const {
    // out = (I + alpha L) u
    if (alpha_ <= 0.0) {
      out = u;
      return;
    }
    const int n = n_;
    for (int i = 0; i < n; ++i) {
      const double lap = u[(i + 1) % n] - 2.0 * u[i] + u[(i - 1 + n) % n];
      out[i] = u[i] + alpha_ * lap;
    }
  }

 private:
  void thomas(const Eigen::VectorXd& r, Eigen::VectorXd& x) const {
    const double a = -alpha_;
    x[0] = r[0] / denom_[0];
    for (int i = 1; i < n_; ++i) x[i] = (r[i] - a * x[i - 1]) / denom_[i];
    for (int i = n_ - 2; i >= 0; --i) x[i] -= cp_[i] * x[i + 1];
  }

  int n_;
  double alpha_ = 0.0;
  double gamma_ = 0.0, corr_denom_ = 1.0;
  std::vector<double> bb_, cp_, denom_;
  Eigen::VectorXd x2_;
};

}  // namespace

std::vector<DiscreteMeasure> burgers_viscous_solve(double y, double nu, double t_end,
                                                   const ProblemFamily& fam,
                                                   int n_frames,
                                                   ViscousDiagnostics* diag) {
  const SpatialGrid& g = fam.grid;
  const int n = g.n_cells;
  const double dx = g.dx();
  const double cfl = fam.viscous.cfl;

  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    const double lo = std::max(0.0, g.edge(i));
    const double hi = std::min(1.0 / y, g.edge(i + 1));
    u[i] = y * std::max(0.0, hi - lo) / dx;
  }

  std::vector<double> frame_times;
  for (int k = 1; k <= n_frames; ++k) frame_times.push_back(t_end * k / n_frames);
  std::vector<DiscreteMeasure> frames;
  auto emit = [&](const Eigen::VectorXd& state) {
    frames.emplace_back(g, state.cwiseMax(0.0));
  };

  const double mass0 = u.sum() * dx;
  double max_drift = 0.0;
  int steps = 0;
  double t = 0.0;
  size_t next_frame = 0;
  Eigen::VectorXd r0(n), r1(n), flux(n), rhs(n), pred(n), tmp(n);

  while (next_frame < frame_times.size()) {
    const double target = frame_times[next_frame];
    if (t >= target - 1e-14 * std::max(1.0, t_end)) {
      emit(u);
      ++next_frame;
      continue;
    }
    const double smax = std::max(u.cwiseAbs().maxCoeff(), 1e-10);
    const double dt = std::min(cfl * dx / smax, target - t);
    const double alpha = nu * dt / (2.0 * dx * dx);
    CyclicDiffusionSolver diff(n, alpha);

    // predictor: Euler advection + Crank-Nicolson diffusion
    advective_rhs(u, dx, r0, flux);
    diff.apply_explicit(u, tmp);
    rhs = tmp + dt * r0;
    diff.solve(rhs, pred);
    // corrector: trapezoidal advection
    advective_rhs(pred, dx, r1, flux);
    rhs = tmp + 0.5 * dt * (r0 + r1);
    diff.solve(rhs, u);

    t += dt;
    ++steps;
    max_drift = std::max(max_drift, std::abs(u.sum() * dx - mass0) / mass0);
  }
  if (diag) {
    diag->steps = steps;
    diag->max_mass_drift = max_drift;
  }
  return frames;
}

}  // namespace wrom
