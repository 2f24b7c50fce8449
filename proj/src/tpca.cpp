#include "wrom/tpca.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace wrom {

TpcaModel tpca_fit(const SnapshotSet& snapshots) {
  const int n = snapshots.size();
  if (n < 2) throw ConfigError("tpca_fit: need at least 2 snapshots");
  const QuantileGrid& q = snapshots.family.qgrid;
  const double sqw = std::sqrt(q.weight());

  TpcaModel model;
  model.qgrid = q;
  model.grid = snapshots.family.grid;
  model.w_icdf = snapshots.icdfs.colwise().mean().transpose();

  Eigen::MatrixXd T = (snapshots.icdfs.rowwise() - model.w_icdf.transpose()) * sqw;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(T, Eigen::ComputeThinU | Eigen::ComputeThinV);
  model.sigma = svd.singularValues();
  model.modes = svd.matrixV().transpose() / sqw;
  model.coeffs = svd.matrixU() * model.sigma.asDiagonal();
  model.params = snapshots.params;
  return model;
}

namespace {

TpcaReconstruction reconstruct(const TpcaModel& model, const Eigen::VectorXd& coeffs,
                               int n, MonotonePolicy policy) {
  Eigen::VectorXd raw = model.w_icdf;
  if (n > 0) raw += model.modes.topRows(n).transpose() * coeffs;
  auto mono = monotonize(model.qgrid, std::move(raw), policy, model.grid);
  DiscreteMeasure m = icdf_to_measure(mono.icdf, model.grid);
  return {std::move(mono.icdf), std::move(m), mono.repaired,
          std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace

TpcaReconstruction tpca_project(const TpcaModel& model, const QuantileFunction& u,
                                int n, MonotonePolicy policy) {
  if (n < 0 || n > model.rank()) throw ConfigError("tpca_project: rank out of range");
  detail::require_same_qgrid(u.qgrid(), model.qgrid);
  const Eigen::VectorXd log_u = u.values() - model.w_icdf;
  const Eigen::VectorXd c = model.modes.topRows(n) * log_u * model.qgrid.weight();
  TpcaReconstruction rec = reconstruct(model, c, n, policy);
  Eigen::VectorXd fn = Eigen::VectorXd::Zero(log_u.size());
  if (n > 0) fn = model.modes.topRows(n).transpose() * c;
  rec.tangent_error = std::sqrt((log_u - fn).squaredNorm() * model.qgrid.weight());
  return rec;
}

TpcaReconstruction tpca_interpolate(const TpcaModel& model,
                                    const RbfLocalInterpolator& interp, int n,
                                    MonotonePolicy policy) {
  if (n < 0 || n > model.rank()) throw ConfigError("tpca_interpolate: rank out of range");
  Eigen::VectorXd c(n);
  for (int k = 0; k < n; ++k) c[k] = interp.predict(model.coeffs.col(k)).value;
  return reconstruct(model, c, n, policy);
}

TpcaReconstruction tpca_interpolate(const TpcaModel& model, const Eigen::VectorXd& z,
                                    int n, const InterpSettings& settings,
                                    MonotonePolicy policy) {
  RbfLocalInterpolator interp(model.params, z, settings);
  return tpca_interpolate(model, interp, n, policy);
}

}  // namespace wrom
