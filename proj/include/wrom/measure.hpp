#pragma once

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

#include "wrom/grid.hpp"

namespace wrom {

/// Signed density samples on a grid; no positivity or mass invariant.
/// Used for PCA reconstructions and error metrics.
struct DensityField {
  SpatialGrid grid;
  Eigen::VectorXd values;
};

/// Probability measure as nonnegative cell densities, unit mass after
/// normalization; the original total mass is recorded.
class DiscreteMeasure {
 public:
  DiscreteMeasure(const SpatialGrid& grid, Eigen::VectorXd density);

  const SpatialGrid& grid() const { return grid_; }
  const Eigen::VectorXd& density() const { return density_; }  // normalized
  double mass() const { return mass_; }

  /// Density in original (physical) units: normalized density * mass.
  DensityField physical() const { return {grid_, density_ * mass_}; }

 private:
  SpatialGrid grid_;
  Eigen::VectorXd density_;
  double mass_ = 1.0;
};

/// icdf sampled on the quadrature grid; values nondecreasing.
class QuantileFunction {
 public:
  QuantileFunction(const QuantileGrid& qgrid, Eigen::VectorXd values);

  const QuantileGrid& qgrid() const { return qgrid_; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  QuantileGrid qgrid_;
  Eigen::VectorXd values_;
};

/// icdf difference relative to a reference measure; same quadrature grid.
struct TangentVector {
  QuantileGrid qgrid;
  Eigen::VectorXd values;
};

struct BarycentricWeights {
  Eigen::VectorXd lambda;

  /// Throws InvalidWeightsError outside the simplex beyond 1e-12.
  void validate() const;
};

enum class MonotonePolicy { reject, rearrange };

struct MonotonizeResult {
  QuantileFunction icdf;
  bool repaired = false;      // any reordering or clamping applied
  double max_descent = 0.0;   // largest decrease seen in the raw input
};

/// Left-continuous generalized inverse of the piecewise-linear cdf
/// (density treated as piecewise constant per cell).
QuantileFunction cdf_to_icdf(const DiscreteMeasure& m, const QuantileGrid& q);

/// Pushforward of the uniform quadrature weights onto the grid; unit mass.
/// Throws DomainViolationError if icdf values leave [x_min, x_max].
DiscreteMeasure icdf_to_measure(const QuantileFunction& f, const SpatialGrid& grid);

/// Quadrature L2 norm of the icdf difference = W2 in 1D.
double w2_distance(const QuantileFunction& u, const QuantileFunction& v);

TangentVector log_map(const QuantileFunction& u, const QuantileFunction& w);

/// icdf_w + t, repaired or rejected per policy when the sum is not a valid
/// icdf. omega, when given, is the admissible interval for clamping/checks.
QuantileFunction exp_map(const TangentVector& t, const QuantileFunction& w,
                         MonotonePolicy policy = MonotonePolicy::rearrange,
                         std::optional<SpatialGrid> omega = std::nullopt,
                         bool* repaired = nullptr);

/// Sort-based repair: sorting is nonexpansive toward every monotone vector.
/// reject: throws TangentOutsideDomainError if a descent exceeds
/// 1e-12 * (x_max - x_min) (or 1e-12 absolute when omega is absent).
MonotonizeResult monotonize(const QuantileGrid& qgrid, Eigen::VectorXd raw,
                            MonotonePolicy policy,
                            std::optional<SpatialGrid> omega = std::nullopt);

/// Pointwise convex combination of icdfs; monotone by construction.
QuantileFunction barycenter(std::span<const QuantileFunction> dict,
                            const BarycentricWeights& w);

/// Pointwise mean of icdfs = empirical Frechet mean in W2.
QuantileFunction frechet_mean(std::span<const QuantileFunction> set);

namespace detail {
void require_same_qgrid(const QuantileGrid& a, const QuantileGrid& b);
}

}  // namespace wrom
