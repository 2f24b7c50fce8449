#include "wrom/gbar.hpp"

#include <cmath>
#include <limits>

namespace wrom {

namespace {

constexpr double kTieTol = 1e-12;  // lowest index wins within this slack

// argmax over all snapshot pairs of the squared W2 distance, lexicographic
// tie-breaking; evaluated in row blocks to bound memory at N x block
std::pair<int, int> farthest_pair(const Eigen::MatrixXd& icdfs, double weight) {
  const int n = static_cast<int>(icdfs.rows());
  const Eigen::VectorXd norms = icdfs.rowwise().squaredNorm() * weight;
  const int block = 256;
  double best = -1.0;
  std::pair<int, int> arg{0, 1};
  for (int i0 = 0; i0 < n; i0 += block) {
    const int m = std::min(block, n - i0);
    const Eigen::MatrixXd G = icdfs.middleRows(i0, m) * icdfs.transpose() * weight;
    for (int r = 0; r < m; ++r) {
      const int i = i0 + r;
      for (int j = i + 1; j < n; ++j) {
        const double d2 = norms[i] + norms[j] - 2.0 * G(r, j);
        if (d2 > best + kTieTol) {
          best = d2;
          arg = {i, j};
        }
      }
    }
  }
  return arg;
}

}  // namespace

GbarDictionary gbar_fit(const SnapshotSet& snapshots, int n_max, double eps) {
  const int n_snap = snapshots.size();
  if (n_snap < 2) throw ConfigError("gbar_fit: need at least 2 snapshots");
  n_max = std::min(n_max, n_snap);
  if (n_max < 2) throw ConfigError("gbar_fit: n_max >= 2");

  const Eigen::MatrixXd& X = snapshots.icdfs;
  const double w = snapshots.family.qgrid.weight();

  GbarDictionary dict;
  dict.qgrid = snapshots.family.qgrid;
  dict.grid = snapshots.family.grid;
  dict.params = snapshots.params;

  auto [i1, i2] = farthest_pair(X, w);
  dict.selected = {i1, i2};

  std::vector<char> taken(n_snap, 0);
  taken[i1] = taken[i2] = 1;

  // incrementally grown dictionary Gram and snapshot cross products
  Eigen::MatrixXd atoms(n_max, X.cols());
  atoms.row(0) = X.row(i1);
  atoms.row(1) = X.row(i2);
  Eigen::MatrixXd G(n_max, n_max);
  Eigen::MatrixXd B(n_snap, n_max);
  for (int k = 0; k < 2; ++k) {
    B.col(k) = X * atoms.row(k).transpose() * w;
    for (int l = 0; l <= k; ++l) {
      G(k, l) = atoms.row(k).dot(atoms.row(l)) * w;
      G(l, k) = G(k, l);
    }
  }

  // prefix 1 table and residual (atom 1 alone)
  dict.weight_tables.push_back(Eigen::MatrixXd::Ones(n_snap, 1));
  std::vector<double> history;
  {
    double mx = 0.0;
    for (int i = 0; i < n_snap; ++i) {
      const double r2 = (X.row(i) - atoms.row(0)).squaredNorm() * w;
      mx = std::max(mx, r2);
    }
    history.push_back(std::sqrt(mx));
  }

  Eigen::MatrixXd prev = dict.weight_tables[0];
  int k = 2;
  while (true) {
    // optimal weights for every training snapshot at prefix k
    Eigen::MatrixXd table(n_snap, k);
    Eigen::VectorXd residual(n_snap);
    const Eigen::MatrixXd Gk = G.topLeftCorner(k, k);
    for (int i = 0; i < n_snap; ++i) {
      Eigen::VectorXd warm = Eigen::VectorXd::Zero(k);
      warm.head(k - 1) = prev.row(i).transpose();
      const Eigen::VectorXd bi = B.row(i).head(k).transpose();
      const Eigen::VectorXd lam = simplex_lsq(Gk, bi, &warm);
      table.row(i) = lam.transpose();
      const Eigen::VectorXd combo = atoms.topRows(k).transpose() * lam;
      residual[i] = std::sqrt((X.row(i).transpose() - combo).squaredNorm() * w);
    }
    dict.weight_tables.push_back(table);
    prev = std::move(table);

    double mx = -1.0;
    int arg = -1;
    for (int i = 0; i < n_snap; ++i) {
      if (residual[i] > mx + kTieTol) {
        mx = residual[i];
        arg = i;
      }
    }
    history.push_back(mx);

    if (k >= n_max || mx < eps || taken[arg]) break;
    dict.selected.push_back(arg);
    taken[arg] = 1;
    atoms.row(k) = X.row(arg);
    B.col(k) = X * atoms.row(k).transpose() * w;
    for (int l = 0; l <= k; ++l) {
      G(k, l) = atoms.row(k).dot(atoms.row(l)) * w;
      G(l, k) = G(k, l);
    }
    ++k;
  }

  const int n = static_cast<int>(dict.selected.size());
  dict.atom_icdfs = atoms.topRows(n);
  dict.atom_params.resize(n, snapshots.params.cols());
  for (int a = 0; a < n; ++a)
    dict.atom_params.row(a) = snapshots.params.row(dict.selected[a]);
  dict.residual_history =
      Eigen::Map<Eigen::VectorXd>(history.data(), static_cast<Eigen::Index>(history.size()));
  return dict;
}

namespace {

GbarReconstruction reconstruct(const GbarDictionary& dict, Eigen::VectorXd lambda,
                               int n, double residual) {
  Eigen::VectorXd icdf_vals = dict.atom_icdfs.topRows(n).transpose() * lambda;
  QuantileFunction icdf(dict.qgrid, std::move(icdf_vals));
  DiscreteMeasure m = icdf_to_measure(icdf, dict.grid);
  return {std::move(icdf), std::move(m), BarycentricWeights{std::move(lambda)}, residual};
}

}  // namespace

GbarReconstruction gbar_project(const GbarDictionary& dict, const QuantileFunction& u,
                                int n) {
  if (n < 1 || n > dict.size()) throw ConfigError("gbar_project: rank out of range");
  detail::require_same_qgrid(u.qgrid(), dict.qgrid);
  const double w = dict.qgrid.weight();
  const Eigen::MatrixXd A = dict.atom_icdfs.topRows(n);
  const Eigen::MatrixXd G = A * A.transpose() * w;
  const Eigen::VectorXd b = A * u.values() * w;
  Eigen::VectorXd lam = simplex_lsq(G, b);
  const Eigen::VectorXd combo = A.transpose() * lam;
  const double residual = std::sqrt((u.values() - combo).squaredNorm() * w);
  return reconstruct(dict, std::move(lam), n, residual);
}

GbarReconstruction gbar_interpolate(const GbarDictionary& dict,
                                    const RbfLocalInterpolator& interp, int n) {
  if (n < 1 || n > dict.size()) throw ConfigError("gbar_interpolate: rank out of range");
  const Eigen::MatrixXd& table = dict.weight_tables[n - 1];
  Eigen::VectorXd lam(n);
  for (int k = 0; k < n; ++k) lam[k] = interp.predict(table.col(k)).value;
  lam = project_to_simplex(std::move(lam));
  return reconstruct(dict, std::move(lam), n,
                     std::numeric_limits<double>::quiet_NaN());
}

GbarReconstruction gbar_interpolate(const GbarDictionary& dict, const Eigen::VectorXd& z,
                                    int n, const InterpSettings& settings) {
  RbfLocalInterpolator interp(dict.params, z, settings);
  return gbar_interpolate(dict, interp, n);
}

}  // namespace wrom
