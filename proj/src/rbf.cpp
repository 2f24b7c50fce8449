#include "wrom/rbf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace wrom {

namespace {

double median(std::vector<double> v) {
  const size_t m = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + m, v.end());
  double hi = v[m];
  if (v.size() % 2 == 0) {
    const double lo = *std::max_element(v.begin(), v.begin() + m);
    return 0.5 * (lo + hi);
  }
  return hi;
}

// Prediction weights w such that value = w . y solve the symmetric system
//   [A + ridge I   P] [alpha]   [y]
//   [P'            0] [beta ] = [0],   value = phi_q' alpha + p_q' beta,
// i.e. w = head of M^{-1} [phi_q; p_q].
bool solve_weights(const Eigen::MatrixXd& pts, const Eigen::VectorXd& query,
                   double shape, double ridge, int tail, Eigen::VectorXd& w) {
  const int m = static_cast<int>(pts.rows());
  const int p = static_cast<int>(pts.cols());
  const int dim = m + tail;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(dim, dim);
  const double c2 = shape * shape;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double r2 = (pts.row(i) - pts.row(j)).squaredNorm();
      M(i, j) = M(j, i) = std::sqrt(r2 + c2);
    }
    M(i, i) += ridge;
  }
  if (tail >= 1) {
    for (int i = 0; i < m; ++i) M(i, m) = M(m, i) = 1.0;
    for (int k = 1; k < tail; ++k)
      for (int i = 0; i < m; ++i) M(i, m + k) = M(m + k, i) = pts(i, k - 1);
  }
  Eigen::VectorXd rhs(dim);
  for (int i = 0; i < m; ++i)
    rhs[i] = std::sqrt((pts.row(i) - query.transpose()).squaredNorm() + c2);
  if (tail >= 1) rhs[m] = 1.0;
  for (int k = 1; k < tail; ++k) rhs[m + k] = query[k - 1];

  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) return false;
  w = lu.solve(rhs).head(m);
  (void)p;
  return true;
}

}  // namespace

RbfLocalInterpolator::RbfLocalInterpolator(const Eigen::MatrixXd& points,
                                           const Eigen::VectorXd& query,
                                           const InterpSettings& settings) {
  const int n = static_cast<int>(points.rows());
  const int p = static_cast<int>(points.cols());
  if (n == 0) throw NeighborhoodFailureError("no training points");
  if (query.size() != p) throw ConfigError("query dimension mismatch");
  if (settings.policy == InterpSettings::Policy::knn && settings.neighbors < p + 1)
    throw ConfigError("knn policy needs at least dim + 1 neighbors");

  std::vector<std::pair<double, int>> dist(n);
  for (int i = 0; i < n; ++i)
    dist[i] = {(points.row(i) - query.transpose()).norm(), i};

  if (settings.policy == InterpSettings::Policy::ball) {
    if (!(settings.radius > 0)) throw ConfigError("ball policy needs radius > 0");
    for (const auto& [d, i] : dist)
      if (d <= settings.radius) idx_.push_back(i);
    if (idx_.empty())
      throw NeighborhoodFailureError("empty tau-ball neighborhood");
    std::sort(idx_.begin(), idx_.end(), [&](int a, int b) {
      return dist[a].first < dist[b].first ||
             (dist[a].first == dist[b].first && a < b);
    });
  } else {
    const int r = std::min(std::max(settings.neighbors, 1), n);
    std::partial_sort(dist.begin(), dist.begin() + r, dist.end());
    for (int k = 0; k < r; ++k) idx_.push_back(dist[k].second);
  }

  const int m = static_cast<int>(idx_.size());
  Eigen::MatrixXd pts(m, p);
  for (int k = 0; k < m; ++k) pts.row(k) = points.row(idx_[k]);

  double scale = 1.0;
  for (int k = 0; k < m; ++k) scale = std::max(scale, pts.row(k).cwiseAbs().maxCoeff());
  const double d0 = (pts.row(0) - query.transpose()).norm();
  nearest_ = 0;
  if (d0 <= 1e-14 * scale) {
    exact_match_ = 0;
    return;
  }
  if (m == 1) {
    // constant extrapolation from the lone neighbor
    weights_ = Eigen::VectorXd::Ones(1);
    return;
  }

  std::vector<double> pair_dists;
  pair_dists.reserve(m * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      pair_dists.push_back((pts.row(i) - pts.row(j)).norm());
  const double shape = median(pair_dists);
  if (!(shape > 0)) {
    singular_ = true;
    return;
  }

  // prefer a linear tail (reproduces linear coefficient maps exactly),
  // degrade to constant tail, then to bare rbf, then to nearest neighbor
  for (int tail : {1 + p, 1, 0}) {
    if (m < tail + 1) continue;
    if (solve_weights(pts, query, shape, settings.ridge, tail, weights_)) return;
  }
  singular_ = true;
}

RbfPrediction RbfLocalInterpolator::predict(const Eigen::VectorXd& values) const {
  if (exact_match_ >= 0) return {values[idx_[exact_match_]], false};
  if (singular_) return {values[idx_[nearest_]], true};
  double v = 0.0;
  for (size_t k = 0; k < idx_.size(); ++k) v += weights_[k] * values[idx_[k]];
  return {v, false};
}

RbfPrediction rbf_fit_predict(const Eigen::MatrixXd& points,
                              const Eigen::VectorXd& values,
                              const Eigen::VectorXd& query,
                              const InterpSettings& settings) {
  if (values.size() != points.rows())
    throw ConfigError("rbf_fit_predict: values/points size mismatch");
  RbfLocalInterpolator interp(points, query, settings);
  return interp.predict(values);
}

}  // namespace wrom
