#include "wrom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace wrom {

double hminus1_norm(const FemMesh& mesh, const Eigen::VectorXd& f_elems) {
  const int ne = mesh.n_elems;
  if (f_elems.size() != ne) throw ConfigError("hminus1_norm: wrong element count");
  const double h = mesh.h();
  const int ni = ne - 1;  // interior nodes

  // load: b_i = integral of f * hat_i = h/2 (f_left + f_right)
  Eigen::VectorXd b(ni);
  for (int i = 0; i < ni; ++i) b[i] = 0.5 * h * (f_elems[i] + f_elems[i + 1]);

  // stiffness tridiag(-1, 2, -1)/h, Thomas solve
  Eigen::VectorXd phi(ni), cp(ni);
  const double diag = 2.0 / h, off = -1.0 / h;
  cp[0] = off / diag;
  phi[0] = b[0] / diag;
  for (int i = 1; i < ni; ++i) {
    const double m = diag - off * cp[i - 1];
    cp[i] = off / m;
    phi[i] = (b[i] - off * phi[i - 1]) / m;
  }
  for (int i = ni - 2; i >= 0; --i) phi[i] -= cp[i] * phi[i + 1];

  const double dual = b.dot(phi);  // = integral f phi_h >= 0
  return std::sqrt(std::max(dual, 0.0));
}

Eigen::VectorXd resample_cells(const SpatialGrid& from, const Eigen::VectorXd& values,
                               const SpatialGrid& to) {
  if (std::abs(from.x_min - to.x_min) > 1e-12 * from.length() ||
      std::abs(from.x_max - to.x_max) > 1e-12 * from.length())
    throw GridMismatchError("resample_cells: intervals differ");
  Eigen::VectorXd out(to.n_cells);
  const double dxt = to.dx();
  for (int i = 0; i < to.n_cells; ++i) {
    const double a = to.edge(i), b = to.edge(i + 1);
    // average of the piecewise-constant source over [a, b]
    double acc = 0.0;
    int j0 = from.cell_of(a + 1e-15 * from.length());
    int j1 = from.cell_of(b - 1e-15 * from.length());
    for (int j = j0; j <= j1; ++j) {
      const double lo = std::max(a, from.edge(j));
      const double hi = std::min(b, from.edge(j + 1));
      if (hi > lo) acc += values[j] * (hi - lo);
    }
    out[i] = acc / dxt;
  }
  return out;
}

namespace {

// difference of two cell fields on the finer common grid
std::pair<SpatialGrid, Eigen::VectorXd> common_difference(const DensityField& u,
                                                          const DensityField& v) {
  if (u.grid == v.grid) return {u.grid, u.values - v.values};
  const SpatialGrid& fine = u.grid.n_cells >= v.grid.n_cells ? u.grid : v.grid;
  Eigen::VectorXd a = u.grid == fine ? u.values : resample_cells(u.grid, u.values, fine);
  Eigen::VectorXd b = v.grid == fine ? v.values : resample_cells(v.grid, v.values, fine);
  return {fine, a - b};
}

}  // namespace

double l2_error(const DensityField& u, const DensityField& v) {
  auto [grid, diff] = common_difference(u, v);
  return std::sqrt(diff.squaredNorm() * grid.dx());
}

double hminus1_error(const DensityField& u, const DensityField& v, const FemMesh& mesh) {
  auto [grid, diff] = common_difference(u, v);
  if (std::abs(grid.x_min - mesh.x0) > 1e-9 * grid.length() ||
      std::abs(grid.x_max - mesh.x1) > 1e-9 * grid.length())
    throw GridMismatchError("hminus1_error: FEM mesh interval differs from grid");
  // sample the cell field at element midpoints
  Eigen::VectorXd f(mesh.n_elems);
  const double h = mesh.h();
  for (int e = 0; e < mesh.n_elems; ++e)
    f[e] = diff[grid.cell_of(mesh.x0 + (e + 0.5) * h)];
  return hminus1_norm(mesh, f);
}

const ErrorRow* ErrorReport::find(const std::string& model, const std::string& metric,
                                  int n) const {
  for (const auto& r : rows)
    if (r.model == model && r.metric == metric && r.n == n) return &r;
  return nullptr;
}

void ErrorReport::write_csv(std::ostream& os) const {
  os << "model,metric,n,e_av,e_wc,runtime_ratio_mean,runtime_ratio_median\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%.17g,%.17g,%.17g,%.17g\n",
                  r.model.c_str(), r.metric.c_str(), r.n, r.e_av, r.e_wc,
                  r.runtime_ratio_mean, r.runtime_ratio_median);
    os << buf;
  }
}

}  // namespace wrom
