#include "wrom/snapshots.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace wrom {

std::string family_name(Family f) {
  switch (f) {
    case Family::transport: return "transport";
    case Family::burgers_inviscid: return "burgers_inviscid";
    case Family::burgers_viscous: return "burgers_viscous";
    case Family::camassa_holm: return "camassa_holm";
    case Family::kdv: return "kdv";
  }
  throw ConfigError("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "transport") return Family::transport;
  if (name == "burgers_inviscid") return Family::burgers_inviscid;
  if (name == "burgers_viscous") return Family::burgers_viscous;
  if (name == "camassa_holm") return Family::camassa_holm;
  if (name == "kdv") return Family::kdv;
  throw ConfigError("unknown family name: " + name);
}

bool ParameterBox::contains(const Eigen::VectorXd& z, double tol) const {
  if (z.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    const double span = bounds(i, 1) - bounds(i, 0);
    if (z[i] < bounds(i, 0) - tol * span || z[i] > bounds(i, 1) + tol * span)
      return false;
  }
  return true;
}

ProblemFamily ProblemFamily::defaults(Family f, int n_quad, int n_cells) {
  ProblemFamily fam;
  fam.family = f;
  fam.qgrid = QuantileGrid(n_quad);
  auto box = [](std::vector<std::string> names,
                std::initializer_list<std::pair<double, double>> bs) {
    ParameterBox b;
    b.names = std::move(names);
    b.bounds.resize(static_cast<Eigen::Index>(bs.size()), 2);
    int i = 0;
    for (auto [lo, hi] : bs) {
      b.bounds(i, 0) = lo;
      b.bounds(i, 1) = hi;
      ++i;
    }
    return b;
  };
  switch (f) {
    case Family::transport:
      fam.box = box({"y"}, {{0.0, 1.0}});
      fam.grid = SpatialGrid(-1.0, 1.0, n_cells ? n_cells : 2000);
      break;
    case Family::burgers_inviscid:
      fam.box = box({"t", "y"}, {{0.0, 5.0}, {0.5, 3.0}});
      fam.grid = SpatialGrid(-1.0, 4.0, n_cells ? n_cells : 2000);
      break;
    case Family::burgers_viscous:
      fam.box = box({"t", "y", "nu"}, {{0.0, 3.0}, {0.5, 3.0}, {5e-5, 0.1}});
      fam.grid = SpatialGrid(-3.0, 5.0, n_cells ? n_cells : 1600);
      break;
    case Family::camassa_holm:
      fam.box = box({"t", "q10"}, {{0.0, 40.0}, {-2.0, 2.0}});
      fam.grid = SpatialGrid(-15.0, 25.0, n_cells ? n_cells : 4000);
      break;
    case Family::kdv:
      fam.box = box({"t", "k2"}, {{0.0, 2.5e-3}, {16.0, 22.0}});
      fam.grid = SpatialGrid(-1.0, 2.0, n_cells ? n_cells : 4000);
      break;
  }
  return fam;
}

QuantileFunction SnapshotSet::icdf(int i) const {
  return QuantileFunction(family.qgrid, icdfs.row(i).transpose());
}

DiscreteMeasure SnapshotSet::measure(int i) const {
  return DiscreteMeasure(family.grid, densities.row(i).transpose() * masses[i]);
}

namespace {

void check_param(const ProblemFamily& fam, const Eigen::VectorXd& z) {
  if (!fam.box.contains(z))
    throw DomainViolationError("parameter outside the family box for " +
                               family_name(fam.family));
}

// exact cell averages of the indicator of [a, b]
Eigen::VectorXd indicator_density(const SpatialGrid& g, double a, double b) {
  Eigen::VectorXd rho(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    const double lo = std::max(a, g.edge(i));
    const double hi = std::min(b, g.edge(i + 1));
    rho[i] = std::max(0.0, hi - lo) / g.dx();
  }
  return rho;
}

}  // namespace

Snapshot transport_snapshot(double y, const ProblemFamily& fam) {
  Eigen::VectorXd z(1);
  z << y;
  check_param(fam, z);
  Eigen::VectorXd vals(fam.qgrid.n_quad);
  for (int j = 0; j < fam.qgrid.n_quad; ++j) vals[j] = y - 1.0 + fam.qgrid.node(j);
  QuantileFunction icdf(fam.qgrid, std::move(vals));
  DiscreteMeasure m(fam.grid, indicator_density(fam.grid, y - 1.0, y));
  return {z, std::move(m), std::move(icdf)};
}

Eigen::VectorXd burgers_inviscid_icdf(double y, double t, const QuantileGrid& q) {
  Eigen::VectorXd vals(q.n_quad);
  if (t <= 0.0) {
    for (int j = 0; j < q.n_quad; ++j) vals[j] = q.node(j) / y;
    return vals;
  }
  const double s_corner = 0.5 * y * y * t;  // rarefaction joins the plateau here
  const bool merged = t >= 2.0 / (y * y);
  for (int j = 0; j < q.n_quad; ++j) {
    const double s = q.node(j);
    if (merged || s < s_corner)
      vals[j] = std::sqrt(2.0 * t * s);
    else
      vals[j] = (s + s_corner) / y;
  }
  return vals;
}

Snapshot burgers_inviscid_snapshot(double y, double t, const ProblemFamily& fam) {
  Eigen::VectorXd z(2);
  z << t, y;
  check_param(fam, z);
  QuantileFunction icdf(fam.qgrid, burgers_inviscid_icdf(y, t, fam.qgrid));
  DiscreteMeasure m = icdf_to_measure(icdf, fam.grid);
  return {z, std::move(m), std::move(icdf)};
}

Snapshot generate_snapshot(const ProblemFamily& fam, const Eigen::VectorXd& z) {
  switch (fam.family) {
    case Family::transport:
      return transport_snapshot(z[0], fam);
    case Family::burgers_inviscid:
      return burgers_inviscid_snapshot(z[1], z[0], fam);
    case Family::burgers_viscous: {
      check_param(fam, z);
      auto frames = burgers_viscous_solve(z[1], z[2], z[0], fam, 1);
      DiscreteMeasure m = std::move(frames.back());
      QuantileFunction icdf = cdf_to_icdf(m, fam.qgrid);
      return {z, std::move(m), std::move(icdf)};
    }
    case Family::camassa_holm: {
      check_param(fam, z);
      DiscreteMeasure m = camassa_holm_snapshot(z[1], z[0], fam);
      QuantileFunction icdf = cdf_to_icdf(m, fam.qgrid);
      return {z, std::move(m), std::move(icdf)};
    }
    case Family::kdv: {
      check_param(fam, z);
      DiscreteMeasure m = kdv_snapshot(z[1], z[0], fam);
      QuantileFunction icdf = cdf_to_icdf(m, fam.qgrid);
      return {z, std::move(m), std::move(icdf)};
    }
  }
  throw ConfigError("unknown family");
}

SnapshotSet sample_training_set(const ProblemFamily& fam, int count, std::uint64_t seed) {
  if (count < 1) throw ConfigError("sample_training_set: count >= 1");
  const int p = fam.box.dim();
  SnapshotSet set;
  set.family = fam;
  set.seed = seed;
  set.params.resize(count, p);
  set.icdfs.resize(count, fam.qgrid.n_quad);
  set.densities.resize(count, fam.grid.n_cells);
  set.masses.resize(count);
  set.walltime.resize(count);

  std::mt19937_64 eng(seed);
  auto unit = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0,1)
  };
  for (int i = 0; i < count; ++i)
    for (int d = 0; d < p; ++d)
      set.params(i, d) =
          fam.box.bounds(d, 0) + unit() * (fam.box.bounds(d, 1) - fam.box.bounds(d, 0));

  for (int i = 0; i < count; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Snapshot s = generate_snapshot(fam, set.params.row(i).transpose());
    const auto t1 = std::chrono::steady_clock::now();
    set.icdfs.row(i) = s.icdf.values().transpose();
    set.densities.row(i) = s.measure.density().transpose();
    set.masses[i] = s.measure.mass();
    set.walltime[i] = std::chrono::duration<double>(t1 - t0).count();
  }
  return set;
}

}  // namespace wrom
