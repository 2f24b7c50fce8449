#include <random>

#include "doctest.h"
#include "wrom/measure.hpp"

using namespace wrom;

namespace {

DiscreteMeasure uniform_measure(double a, double b, const SpatialGrid& g) {
  Eigen::VectorXd rho(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    const double lo = std::max(a, g.edge(i));
    const double hi = std::min(b, g.edge(i + 1));
    rho[i] = std::max(0.0, hi - lo) / g.dx();
  }
  return DiscreteMeasure(g, rho);
}

// all mass in the cell containing x (grid-aligned in tests)
DiscreteMeasure dirac_surrogate(double x, const SpatialGrid& g) {
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(g.n_cells);
  rho[g.cell_of(x)] = 1.0;
  return DiscreteMeasure(g, rho);
}

Eigen::VectorXd random_density(std::mt19937_64& eng, int n) {
  Eigen::VectorXd d(n);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int i = 0; i < n; ++i) d[i] = u(eng);
  return d;
}

}  // namespace

TEST_SUITE("measure") {

TEST_CASE("cdf_to_icdf on the uniform density is the identity") {
  SpatialGrid g(0.0, 1.0, 64);
  QuantileGrid q(128);
  auto icdf = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(icdf.values()[j] == doctest::Approx(q.node(j)).epsilon(1e-12));
}

TEST_CASE("cdf_to_icdf of a Dirac surrogate stays in its cell") {
  SpatialGrid g(0.0, 4.0, 400);  // cell width 0.01, x=2 on a cell edge
  QuantileGrid q(64);
  auto icdf = cdf_to_icdf(dirac_surrogate(2.005, g), q);
  for (int j = 0; j < q.n_quad; ++j) {
    CHECK(icdf.values()[j] >= 2.0);
    CHECK(icdf.values()[j] <= 2.01);
    CHECK(icdf.values()[j] == doctest::Approx(2.005).epsilon(0.01));
  }
}

TEST_CASE("cdf_to_icdf of density 1/2 on [0,2] is icdf(s) = 2s") {
  SpatialGrid g(0.0, 2.0, 200);
  QuantileGrid q(32);
  auto icdf = cdf_to_icdf(uniform_measure(0.0, 2.0, g), q);
  // derived closed form: cdf(x) = x/2 so icdf(s) = 2s; check s = 0.25 node
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(icdf.values()[j] == doctest::Approx(2.0 * q.node(j)).epsilon(1e-12));
}

TEST_CASE("zero-mass measure is rejected") {
  SpatialGrid g(0.0, 1.0, 8);
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(8);
  CHECK_THROWS_AS(DiscreteMeasure(g, rho), InvalidMeasureError);
}

TEST_CASE("icdf_to_measure: identity icdf gives the uniform density") {
  SpatialGrid g(0.0, 1.0, 50);
  QuantileGrid q(5000);
  Eigen::VectorXd vals(q.n_quad);
  for (int j = 0; j < q.n_quad; ++j) vals[j] = q.node(j);
  auto m = icdf_to_measure(QuantileFunction(q, vals), g);
  CHECK(m.mass() == doctest::Approx(1.0));
  for (int i = 0; i < g.n_cells; ++i)
    CHECK(m.density()[i] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("icdf_to_measure: constant icdf puts all mass in one cell") {
  SpatialGrid g(0.0, 4.0, 100);
  QuantileGrid q(256);
  auto m = icdf_to_measure(QuantileFunction(q, Eigen::VectorXd::Constant(256, 2.0)), g);
  int nonzero = 0;
  for (int i = 0; i < g.n_cells; ++i)
    if (m.density()[i] > 0) ++nonzero;
  CHECK(nonzero == 1);
  CHECK(m.density()[g.cell_of(2.0)] * g.dx() == doctest::Approx(1.0));
}

TEST_CASE("icdf_to_measure: sqrt(2s) pushforward gives density = x on [0,sqrt(2)]") {
  SpatialGrid g(0.0, 2.0, 100);
  QuantileGrid q(200000);
  Eigen::VectorXd vals(q.n_quad);
  for (int j = 0; j < q.n_quad; ++j) vals[j] = std::sqrt(2.0 * q.node(j));
  auto m = icdf_to_measure(QuantileFunction(q, vals), g);
  // derived by differentiating the inverse: rho(x) = x for 0 <= x <= sqrt(2)
  for (int i = 5; i < g.n_cells; ++i) {
    const double x = g.center(i);
    if (x < std::sqrt(2.0) - 0.05)
      CHECK(m.density()[i] == doctest::Approx(x).epsilon(0.02));
    if (x > std::sqrt(2.0) + 0.05) CHECK(m.density()[i] == 0.0);
  }
}

TEST_CASE("icdf_to_measure rejects values outside the domain") {
  SpatialGrid g(0.0, 1.0, 10);
  QuantileGrid q(16);
  CHECK_THROWS_AS(icdf_to_measure(QuantileFunction(q, Eigen::VectorXd::Constant(16, 3.0)), g),
                  DomainViolationError);
}

TEST_CASE("w2_distance between Dirac surrogates is |x1 - x2|") {
  SpatialGrid g(-1.0, 4.0, 500);
  QuantileGrid q(512);
  auto a = cdf_to_icdf(dirac_surrogate(0.005, g), q);
  auto b = cdf_to_icdf(dirac_surrogate(3.005, g), q);
  CHECK(w2_distance(a, b) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(w2_distance(a, a) == 0.0);
}

TEST_CASE("w2_distance uniform[0,1] vs uniform[0,2] is 1/sqrt(3)") {
  SpatialGrid g(0.0, 2.0, 400);
  QuantileGrid q(4096);
  auto a = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  auto b = cdf_to_icdf(uniform_measure(0.0, 2.0, g), q);
  CHECK(w2_distance(a, b) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
}

TEST_CASE("w2_distance rejects mismatched grids") {
  QuantileGrid q1(16), q2(32);
  QuantileFunction a(q1, Eigen::VectorXd::LinSpaced(16, 0.0, 1.0));
  QuantileFunction b(q2, Eigen::VectorXd::LinSpaced(32, 0.0, 1.0));
  CHECK_THROWS_AS(w2_distance(a, b), GridMismatchError);
}

TEST_CASE("log_map of a translated measure is the constant shift") {
  SpatialGrid g(-2.0, 3.0, 1000);
  QuantileGrid q(512);
  auto w = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  auto u = cdf_to_icdf(uniform_measure(0.7, 1.7, g), q);  // shift by +0.7
  auto t = log_map(u, w);
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(t.values[j] == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("log_map of a rescaled measure matches the icdf transform") {
  // the a=2, b=0 transform of uniform[0,1] has icdf (icdf_w - b)/a = s/2,
  // i.e. uniform[0, 1/2]; its Log at w is s/2 - s = -s/2
  SpatialGrid g(0.0, 2.0, 1000);
  QuantileGrid q(250);
  auto w = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  auto u = cdf_to_icdf(uniform_measure(0.0, 0.5, g), q);
  auto t = log_map(u, w);
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(t.values[j] == doctest::Approx(-0.5 * q.node(j)).epsilon(1e-8));
}

TEST_CASE("exp_map round trip and zero tangent") {
  SpatialGrid g(0.0, 2.0, 100);
  QuantileGrid q(128);
  auto w = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  auto u = cdf_to_icdf(uniform_measure(0.5, 2.0, g), q);

  auto zero = exp_map(TangentVector{q, Eigen::VectorXd::Zero(128)}, w);
  CHECK((zero.values() - w.values()).lpNorm<Eigen::Infinity>() == 0.0);

  auto back = exp_map(log_map(u, w), w);
  CHECK((back.values() - u.values()).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("exp_map with a constant tangent shifts the measure") {
  SpatialGrid g(0.0, 3.0, 300);  // 0, 1, 0.8, 1.8 all on cell edges
  QuantileGrid q(64);
  auto w = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  auto shifted = exp_map(TangentVector{q, Eigen::VectorXd::Constant(64, 0.8)}, w);
  auto expect = cdf_to_icdf(uniform_measure(0.8, 1.8, g), q);
  CHECK((shifted.values() - expect.values()).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("exp_map reject policy throws on non-monotone sums") {
  QuantileGrid q(4);
  Eigen::VectorXd wv(4);
  wv << 0.0, 0.1, 0.2, 0.3;
  QuantileFunction w(q, wv);
  Eigen::VectorXd tv(4);
  tv << 0.0, 0.5, -0.5, 0.0;
  CHECK_THROWS_AS(exp_map(TangentVector{q, tv}, w, MonotonePolicy::reject),
                  TangentOutsideDomainError);
  bool repaired = false;
  auto fixed = exp_map(TangentVector{q, tv}, w, MonotonePolicy::rearrange,
                       std::nullopt, &repaired);
  CHECK(repaired);
  for (int j = 1; j < 4; ++j) CHECK(fixed.values()[j] >= fixed.values()[j - 1]);
}

TEST_CASE("monotonize leaves monotone input unchanged and sorts (1,0)") {
  QuantileGrid q(2);
  Eigen::VectorXd mono(2);
  mono << 0.25, 0.5;
  auto r1 = monotonize(q, mono, MonotonePolicy::rearrange);
  CHECK_FALSE(r1.repaired);
  CHECK(r1.icdf.values()[0] == 0.25);

  Eigen::VectorXd flip(2);
  flip << 1.0, 0.0;
  auto r2 = monotonize(q, flip, MonotonePolicy::rearrange);
  CHECK(r2.repaired);
  CHECK(r2.icdf.values()[0] == 0.0);
  CHECK(r2.icdf.values()[1] == 1.0);
  CHECK(r2.max_descent == doctest::Approx(1.0));
}

TEST_CASE("monotonize (sorting) does not increase distance to monotone targets") {
  std::mt19937_64 eng(7);
  QuantileGrid q(64);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd target(64), noisy(64);
    double acc = 0.0;
    for (int j = 0; j < 64; ++j) {
      acc += std::abs(n01(eng));
      target[j] = acc;
      noisy[j] = acc + 0.5 * n01(eng);
    }
    auto rep = monotonize(q, noisy, MonotonePolicy::rearrange);
    const double before = (noisy - target).norm();
    const double after = (rep.icdf.values() - target).norm();
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("barycenter: vertex weight returns the member") {
  SpatialGrid g(0.0, 2.0, 50);
  QuantileGrid q(32);
  std::vector<QuantileFunction> dict{cdf_to_icdf(uniform_measure(0.0, 1.0, g), q),
                                     cdf_to_icdf(uniform_measure(1.0, 2.0, g), q)};
  Eigen::VectorXd lam(2);
  lam << 1.0, 0.0;
  auto b = barycenter(dict, BarycentricWeights{lam});
  CHECK((b.values() - dict[0].values()).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("barycenter of Dirac surrogates at 0 and 2 sits at 1") {
  SpatialGrid g(-1.0, 3.0, 400);
  QuantileGrid q(64);
  std::vector<QuantileFunction> dict{cdf_to_icdf(dirac_surrogate(0.005, g), q),
                                     cdf_to_icdf(dirac_surrogate(2.005, g), q)};
  Eigen::VectorXd lam(2);
  lam << 0.5, 0.5;
  auto b = barycenter(dict, BarycentricWeights{lam});
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(b.values()[j] == doctest::Approx(1.005).epsilon(0.01));
}

TEST_CASE("barycenter of uniform[0,1] and uniform[1,2] is uniform[0.5,1.5]") {
  SpatialGrid g(0.0, 2.0, 1000);
  QuantileGrid q(128);
  std::vector<QuantileFunction> dict{cdf_to_icdf(uniform_measure(0.0, 1.0, g), q),
                                     cdf_to_icdf(uniform_measure(1.0, 2.0, g), q)};
  Eigen::VectorXd lam(2);
  lam << 0.5, 0.5;
  auto b = barycenter(dict, BarycentricWeights{lam});
  auto expect = cdf_to_icdf(uniform_measure(0.5, 1.5, g), q);
  CHECK((b.values() - expect.values()).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("barycenter rejects weights off the simplex") {
  SpatialGrid g(0.0, 1.0, 10);
  QuantileGrid q(8);
  std::vector<QuantileFunction> dict{cdf_to_icdf(uniform_measure(0.0, 1.0, g), q)};
  Eigen::VectorXd lam(1);
  lam << 1.5;
  CHECK_THROWS_AS(barycenter(dict, BarycentricWeights{lam}), InvalidWeightsError);
}

TEST_CASE("frechet_mean: singleton, Dirac pair, and optimality") {
  SpatialGrid g(-1.0, 3.0, 400);
  QuantileGrid q(64);
  std::vector<QuantileFunction> single{cdf_to_icdf(uniform_measure(0.0, 1.0, g), q)};
  auto m1 = frechet_mean(single);
  CHECK((m1.values() - single[0].values()).lpNorm<Eigen::Infinity>() == 0.0);

  std::vector<QuantileFunction> diracs{cdf_to_icdf(dirac_surrogate(0.005, g), q),
                                       cdf_to_icdf(dirac_surrogate(2.005, g), q)};
  auto m2 = frechet_mean(diracs);
  for (int j = 0; j < q.n_quad; ++j)
    CHECK(m2.values()[j] == doctest::Approx(1.005).epsilon(0.01));

  // mean minimizes the sum of squared W2 distances over the set members
  std::mt19937_64 eng(3);
  SpatialGrid g2(0.0, 1.0, 32);
  std::vector<QuantileFunction> set;
  for (int k = 0; k < 8; ++k)
    set.push_back(cdf_to_icdf(DiscreteMeasure(g2, random_density(eng, 32)), q));
  auto mean = frechet_mean(set);
  auto cost = [&](const QuantileFunction& c) {
    double acc = 0.0;
    for (const auto& f : set) acc += std::pow(w2_distance(c, f), 2);
    return acc;
  };
  const double best = cost(mean);
  for (const auto& f : set) CHECK(best <= cost(f) + 1e-12);
}

TEST_CASE("isometry: W2 equals tangent distance for random measures") {
  std::mt19937_64 eng(11);
  SpatialGrid g(0.0, 1.0, 48);
  QuantileGrid q(256);
  auto w = cdf_to_icdf(uniform_measure(0.0, 1.0, g), q);
  for (int trial = 0; trial < 25; ++trial) {
    auto u = cdf_to_icdf(DiscreteMeasure(g, random_density(eng, 48)), q);
    auto v = cdf_to_icdf(DiscreteMeasure(g, random_density(eng, 48)), q);
    const double d = w2_distance(u, v);
    const double t = std::sqrt((log_map(u, w).values - log_map(v, w).values).squaredNorm() *
                               q.weight());
    CHECK(std::abs(d - t) <= 1e-10);
  }
}

TEST_CASE("triangle inequality on random triples") {
  std::mt19937_64 eng(13);
  SpatialGrid g(0.0, 1.0, 40);
  QuantileGrid q(128);
  for (int trial = 0; trial < 25; ++trial) {
    auto a = cdf_to_icdf(DiscreteMeasure(g, random_density(eng, 40)), q);
    auto b = cdf_to_icdf(DiscreteMeasure(g, random_density(eng, 40)), q);
    auto c = cdf_to_icdf(DiscreteMeasure(g, random_density(eng, 40)), q);
    CHECK(w2_distance(a, c) <= w2_distance(a, b) + w2_distance(b, c) + 1e-10);
  }
}

}  // TEST_SUITE
