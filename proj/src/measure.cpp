#include "wrom/measure.hpp"

#include <algorithm>
#include <cmath>

namespace wrom {

namespace detail {
void require_same_qgrid(const QuantileGrid& a, const QuantileGrid& b) {
  if (!(a == b)) throw GridMismatchError("quantile grids differ");
}
}  // namespace detail

DiscreteMeasure::DiscreteMeasure(const SpatialGrid& grid, Eigen::VectorXd density)
    : grid_(grid), density_(std::move(density)) {
  if (density_.size() != grid_.n_cells)
    throw InvalidMeasureError("density length does not match grid");
  const double scale = density_.cwiseAbs().maxCoeff();
  const double neg_tol = 1e-12 * (scale > 0 ? scale : 1.0);
  for (Eigen::Index i = 0; i < density_.size(); ++i) {
    if (density_[i] < -neg_tol)
      throw InvalidMeasureError("negative density entry");
    if (density_[i] < 0) density_[i] = 0.0;
  }
  mass_ = density_.sum() * grid_.dx();
  if (!(mass_ > 0) || !std::isfinite(mass_))
    throw InvalidMeasureError("measure has non-positive total mass");
  density_ /= mass_;
}

QuantileFunction::QuantileFunction(const QuantileGrid& qgrid, Eigen::VectorXd values)
    : qgrid_(qgrid), values_(std::move(values)) {
  if (values_.size() != qgrid_.n_quad)
    throw GridMismatchError("icdf length does not match quantile grid");
  const double span = values_[values_.size() - 1] - values_[0];
  const double tol = 1e-12 * std::max(1.0, std::abs(span));
  for (Eigen::Index j = 1; j < values_.size(); ++j)
    if (values_[j] < values_[j - 1] - tol)
      throw InvalidMeasureError("icdf values are not nondecreasing");
}

void BarycentricWeights::validate() const {
  if (lambda.size() == 0) throw InvalidWeightsError("empty weights");
  double s = 0.0;
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < -1e-12) throw InvalidWeightsError("negative weight");
    s += lambda[i];
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw InvalidWeightsError("weights do not sum to 1");
}

QuantileFunction cdf_to_icdf(const DiscreteMeasure& m, const QuantileGrid& q) {
  const auto& grid = m.grid();
  const auto& rho = m.density();
  const int nc = grid.n_cells;
  const double dx = grid.dx();

  // cumulative mass at cell edges; renormalized so the last entry is exactly 1
  Eigen::VectorXd cum(nc + 1);
  cum[0] = 0.0;
  for (int i = 0; i < nc; ++i) cum[i + 1] = cum[i] + rho[i] * dx;
  const double total = cum[nc];
  if (!(total > 0)) throw InvalidMeasureError("zero total mass");
  cum /= total;

  Eigen::VectorXd vals(q.n_quad);
  int i = 1;
  for (int j = 0; j < q.n_quad; ++j) {
    const double s = q.node(j);
    // smallest edge index with cum[i] >= s; flat (zero-density) runs are
    // skipped, which realizes the left-continuous generalized inverse
    while (i < nc && cum[i] < s) ++i;
    const double c0 = cum[i - 1], c1 = cum[i];
    vals[j] = grid.edge(i - 1) + (s - c0) / (c1 - c0) * dx;
  }
  return QuantileFunction(q, std::move(vals));
}

DiscreteMeasure icdf_to_measure(const QuantileFunction& f, const SpatialGrid& grid) {
  const auto& v = f.values();
  const double tol = 1e-9 * grid.length();
  if (v[0] < grid.x_min - tol || v[v.size() - 1] > grid.x_max + tol)
    throw DomainViolationError("icdf values outside the spatial domain");
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(grid.n_cells);
  const double w = 1.0 / (f.qgrid().n_quad * grid.dx());
  for (Eigen::Index j = 0; j < v.size(); ++j) rho[grid.cell_of(v[j])] += w;
  return DiscreteMeasure(grid, std::move(rho));
}

double w2_distance(const QuantileFunction& u, const QuantileFunction& v) {
  detail::require_same_qgrid(u.qgrid(), v.qgrid());
  const double sq = (u.values() - v.values()).squaredNorm() * u.qgrid().weight();
  return std::sqrt(sq);
}

TangentVector log_map(const QuantileFunction& u, const QuantileFunction& w) {
  detail::require_same_qgrid(u.qgrid(), w.qgrid());
  return {u.qgrid(), u.values() - w.values()};
}

MonotonizeResult monotonize(const QuantileGrid& qgrid, Eigen::VectorXd raw,
                            MonotonePolicy policy,
                            std::optional<SpatialGrid> omega) {
  double max_descent = 0.0;
  for (Eigen::Index j = 1; j < raw.size(); ++j)
    max_descent = std::max(max_descent, raw[j - 1] - raw[j]);
  double out_of_domain = 0.0;
  if (omega) {
    out_of_domain = std::max(std::max(0.0, omega->x_min - raw.minCoeff()),
                             std::max(0.0, raw.maxCoeff() - omega->x_max));
  }
  const double tol = 1e-12 * (omega ? omega->length() : 1.0);
  if (policy == MonotonePolicy::reject) {
    if (max_descent > tol || out_of_domain > tol)
      throw TangentOutsideDomainError(
          "icdf repair required: max descent " + std::to_string(max_descent) +
          ", domain excess " + std::to_string(out_of_domain));
    return {QuantileFunction(qgrid, std::move(raw)), false, max_descent};
  }
  bool repaired = false;
  if (max_descent > 0.0) {
    std::sort(raw.data(), raw.data() + raw.size());
    repaired = true;
  }
  if (omega && out_of_domain > 0.0) {
    for (Eigen::Index j = 0; j < raw.size(); ++j)
      raw[j] = std::clamp(raw[j], omega->x_min, omega->x_max);
    repaired = true;
  }
  return {QuantileFunction(qgrid, std::move(raw)), repaired, max_descent};
}

QuantileFunction exp_map(const TangentVector& t, const QuantileFunction& w,
                         MonotonePolicy policy, std::optional<SpatialGrid> omega,
                         bool* repaired) {
  detail::require_same_qgrid(t.qgrid, w.qgrid());
  auto res = monotonize(w.qgrid(), w.values() + t.values, policy, omega);
  if (repaired) *repaired = res.repaired;
  return std::move(res.icdf);
}

QuantileFunction barycenter(std::span<const QuantileFunction> dict,
                            const BarycentricWeights& w) {
  if (dict.empty()) throw InvalidWeightsError("empty dictionary");
  if (static_cast<Eigen::Index>(dict.size()) != w.lambda.size())
    throw InvalidWeightsError("dictionary / weight size mismatch");
  w.validate();
  for (size_t i = 1; i < dict.size(); ++i)
    detail::require_same_qgrid(dict[0].qgrid(), dict[i].qgrid());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(dict[0].values().size());
  for (size_t i = 0; i < dict.size(); ++i) acc += w.lambda[i] * dict[i].values();
  return QuantileFunction(dict[0].qgrid(), std::move(acc));
}

QuantileFunction frechet_mean(std::span<const QuantileFunction> set) {
  if (set.empty()) throw InvalidMeasureError("empty snapshot set");
  for (size_t i = 1; i < set.size(); ++i)
    detail::require_same_qgrid(set[0].qgrid(), set[i].qgrid());
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(set[0].values().size());
  for (const auto& f : set) acc += f.values();
  acc /= static_cast<double>(set.size());
  return QuantileFunction(set[0].qgrid(), std::move(acc));
}

}  // namespace wrom
