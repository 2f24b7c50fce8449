#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "wrom/measure.hpp"

namespace wrom {

enum class Family { transport, burgers_inviscid, burgers_viscous, camassa_holm, kdv };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct ParameterBox {
  std::vector<std::string> names;
  Eigen::MatrixX2d bounds;  // p x 2 (lo, hi)

  int dim() const { return static_cast<int>(bounds.rows()); }
  bool contains(const Eigen::VectorXd& z, double tol = 1e-12) const;
};

struct ViscousSettings {
  double cfl = 0.4;
};

struct PeakonSettings {
  double tol = 1e-10;  // abs/rel tolerance of the adaptive integrator
  double alpha = 1.0;
  double p1 = 0.2, p2 = 0.8, q2 = -5.0;
};

struct ProblemFamily {
  Family family = Family::transport;
  ParameterBox box;
  SpatialGrid grid;
  QuantileGrid qgrid;
  ViscousSettings viscous;
  PeakonSettings peakon;

  static ProblemFamily defaults(Family f, int n_quad = 1024, int n_cells = 0);
};

struct Snapshot {
  Eigen::VectorXd z;
  DiscreteMeasure measure;
  QuantileFunction icdf;
};

/// Column-block snapshot storage; densities are normalized, masses recorded.
struct SnapshotSet {
  ProblemFamily family;
  Eigen::MatrixXd params;     // N x p
  Eigen::MatrixXd icdfs;      // N x n_quad
  Eigen::MatrixXd densities;  // N x n_cells
  Eigen::VectorXd masses;
  Eigen::VectorXd walltime;   // seconds per snapshot
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(params.rows()); }
  QuantileFunction icdf(int i) const;
  DiscreteMeasure measure(int i) const;
};

/// u(z) = 1_{[y-1,y]} dx at t=1; icdf(s) = y - 1 + s.
Snapshot transport_snapshot(double y, const ProblemFamily& fam);

/// Entropy solution of the inviscid Burgers Riemann/rarefaction family,
/// closed-form icdf; density by pushforward.
Snapshot burgers_inviscid_snapshot(double y, double t, const ProblemFamily& fam);

Eigen::VectorXd burgers_inviscid_icdf(double y, double t, const QuantileGrid& q);

struct ViscousDiagnostics {
  int steps = 0;
  double max_mass_drift = 0.0;  // relative, per step
};

/// MUSCL(minmod) + local Lax-Friedrichs advection, Crank-Nicolson diffusion,
/// periodic boundary. Returns n_frames states at evenly spaced times ending
/// at t_end (a single final frame when n_frames = 1).
std::vector<DiscreteMeasure> burgers_viscous_solve(double y, double nu, double t_end,
                                                   const ProblemFamily& fam,
                                                   int n_frames = 1,
                                                   ViscousDiagnostics* diag = nullptr);

struct PeakonState {
  double q1 = 0, q2 = 0, p1 = 0, p2 = 0;
  double hamiltonian_drift = 0;  // max relative drift along the trajectory
  double momentum_drift = 0;
};

/// Integrates the 2-peakon canonical dynamics to time t (embedded RK5(4)).
PeakonState peakon_evolve(double q10, double t, const PeakonSettings& s);

DiscreteMeasure camassa_holm_snapshot(double q10, double t, const ProblemFamily& fam,
                                      PeakonState* state = nullptr);

/// Two-soliton density 2 d^2/dx^2 log tau evaluated from the closed-form
/// rational expression (overflow-safe, nonnegative by construction).
Eigen::VectorXd kdv_density_raw(double k1, double k2, double c1, double c2,
                                double t, const SpatialGrid& grid);

DiscreteMeasure kdv_snapshot(double k2, double t, const ProblemFamily& fam);

Snapshot generate_snapshot(const ProblemFamily& fam, const Eigen::VectorXd& z);

/// i.i.d. uniform parameters over the box; reproducible for a given seed.
SnapshotSet sample_training_set(const ProblemFamily& fam, int count, std::uint64_t seed);

}  // namespace wrom
