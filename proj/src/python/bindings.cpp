#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wrom/experiment.hpp"
#include "wrom/gbar.hpp"
#include "wrom/io.hpp"
#include "wrom/metrics.hpp"
#include "wrom/pca.hpp"
#include "wrom/simplex_qp.hpp"
#include "wrom/tpca.hpp"

namespace py = pybind11;
using namespace wrom;

namespace {

QuantileFunction qf_from_array(const Eigen::VectorXd& values) {
  return QuantileFunction(QuantileGrid(static_cast<int>(values.size())), values);
}

MonotonePolicy policy_from_string(const std::string& s) {
  if (s == "rearrange") return MonotonePolicy::rearrange;
  if (s == "reject") return MonotonePolicy::reject;
  throw ConfigError("policy must be rearrange|reject");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Wasserstein reduced-order models for 1D conservative PDEs";

  py::register_exception<Error>(m, "WromError");

  py::class_<SpatialGrid>(m, "SpatialGrid")
      .def(py::init<double, double, int>(), py::arg("x_min"), py::arg("x_max"),
           py::arg("n_cells"))
      .def_readonly("x_min", &SpatialGrid::x_min)
      .def_readonly("x_max", &SpatialGrid::x_max)
      .def_readonly("n_cells", &SpatialGrid::n_cells)
      .def("centers", [](const SpatialGrid& g) {
        Eigen::VectorXd x(g.n_cells);
        for (int i = 0; i < g.n_cells; ++i) x[i] = g.center(i);
        return x;
      });

  py::class_<ProblemFamily>(m, "ProblemFamily")
      .def_static("defaults",
                  [](const std::string& name, int n_quad, int n_cells) {
                    return ProblemFamily::defaults(family_from_name(name), n_quad,
                                                   n_cells);
                  },
                  py::arg("family"), py::arg("n_quad") = 1024, py::arg("n_cells") = 0)
      .def_property_readonly("grid", [](const ProblemFamily& f) { return f.grid; })
      .def_property_readonly("n_quad", [](const ProblemFamily& f) { return f.qgrid.n_quad; })
      .def_property_readonly(
          "param_names", [](const ProblemFamily& f) { return f.box.names; });

  py::class_<SnapshotSet>(m, "SnapshotSet")
      .def_property_readonly("params", [](const SnapshotSet& s) { return s.params; })
      .def_property_readonly("icdfs", [](const SnapshotSet& s) { return s.icdfs; })
      .def_property_readonly("densities",
                             [](const SnapshotSet& s) { return s.densities; })
      .def_property_readonly("masses", [](const SnapshotSet& s) { return s.masses; })
      .def_property_readonly("walltime", [](const SnapshotSet& s) { return s.walltime; })
      .def("__len__", &SnapshotSet::size);

  m.def("sample_training_set", &sample_training_set, py::arg("family"),
        py::arg("count"), py::arg("seed"));

  // measure-space primitives on plain arrays
  m.def(
      "cdf_to_icdf",
      [](const Eigen::VectorXd& density, const SpatialGrid& grid, int n_quad) {
        DiscreteMeasure mu(grid, density);
        return cdf_to_icdf(mu, QuantileGrid(n_quad)).values();
      },
      py::arg("density"), py::arg("grid"), py::arg("n_quad") = 1024,
      "Left-continuous generalized inverse of the piecewise-linear cdf");
  m.def(
      "icdf_to_density",
      [](const Eigen::VectorXd& icdf, const SpatialGrid& grid) {
        return icdf_to_measure(qf_from_array(icdf), grid).density();
      },
      py::arg("icdf"), py::arg("grid"),
      "Pushforward of uniform quadrature weights; returns a unit-mass density");
  m.def(
      "w2_distance",
      [](const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
        return w2_distance(qf_from_array(u), qf_from_array(v));
      },
      py::arg("icdf_u"), py::arg("icdf_v"));
  m.def(
      "log_map",
      [](const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
        return log_map(qf_from_array(u), qf_from_array(w)).values;
      },
      py::arg("icdf_u"), py::arg("icdf_w"));
  m.def(
      "exp_map",
      [](const Eigen::VectorXd& tangent, const Eigen::VectorXd& w,
         const std::string& policy) {
        const QuantileGrid q(static_cast<int>(w.size()));
        return exp_map(TangentVector{q, tangent}, qf_from_array(w),
                       policy_from_string(policy))
            .values();
      },
      py::arg("tangent"), py::arg("icdf_w"), py::arg("policy") = "rearrange");
  m.def(
      "barycenter",
      [](const Eigen::MatrixXd& icdfs, const Eigen::VectorXd& weights) {
        std::vector<QuantileFunction> dict;
        for (Eigen::Index i = 0; i < icdfs.rows(); ++i)
          dict.push_back(qf_from_array(icdfs.row(i).transpose()));
        return barycenter(dict, BarycentricWeights{weights}).values();
      },
      py::arg("icdfs"), py::arg("weights"),
      "Pointwise convex combination of icdf rows");
  m.def(
      "frechet_mean",
      [](const Eigen::MatrixXd& icdfs) {
        std::vector<QuantileFunction> set;
        for (Eigen::Index i = 0; i < icdfs.rows(); ++i)
          set.push_back(qf_from_array(icdfs.row(i).transpose()));
        return frechet_mean(set).values();
      },
      py::arg("icdfs"));
  m.def(
      "optimal_weights",
      [](const Eigen::VectorXd& target, const Eigen::MatrixXd& icdfs) {
        std::vector<QuantileFunction> dict;
        for (Eigen::Index i = 0; i < icdfs.rows(); ++i)
          dict.push_back(qf_from_array(icdfs.row(i).transpose()));
        auto res = optimal_weights(qf_from_array(target), dict);
        return py::make_tuple(res.weights.lambda, res.residual);
      },
      py::arg("target"), py::arg("icdfs"),
      "Simplex-constrained least squares; returns (weights, residual)");

  // snapshot generators
  m.def("transport_snapshot",
        [](double y, const ProblemFamily& fam) {
          auto s = transport_snapshot(y, fam);
          return py::make_tuple(s.measure.density(), s.icdf.values());
        },
        py::arg("y"), py::arg("family"));
  m.def("burgers_inviscid_snapshot",
        [](double y, double t, const ProblemFamily& fam) {
          auto s = burgers_inviscid_snapshot(y, t, fam);
          return py::make_tuple(s.measure.density(), s.icdf.values());
        },
        py::arg("y"), py::arg("t"), py::arg("family"));
  m.def("burgers_viscous_solve",
        [](double y, double nu, double t_end, const ProblemFamily& fam) {
          return burgers_viscous_solve(y, nu, t_end, fam, 1).back().density();
        },
        py::arg("y"), py::arg("nu"), py::arg("t_end"), py::arg("family"));
  m.def("camassa_holm_snapshot",
        [](double q10, double t, const ProblemFamily& fam) {
          return camassa_holm_snapshot(q10, t, fam).density();
        },
        py::arg("q10"), py::arg("t"), py::arg("family"));
  m.def("kdv_snapshot",
        [](double k2, double t, const ProblemFamily& fam) {
          auto mu = kdv_snapshot(k2, t, fam);
          return py::make_tuple(mu.density(), mu.mass());
        },
        py::arg("k2"), py::arg("t"), py::arg("family"));

  // reduced models
  py::class_<PcaModel>(m, "PcaModel")
      .def_property_readonly("sigma", [](const PcaModel& p) { return p.sigma; })
      .def_property_readonly("modes", [](const PcaModel& p) { return p.modes; })
      .def("project",
           [](const PcaModel& p, const Eigen::VectorXd& density, int n) {
             return pca_project(p, {p.grid, density}, n).values;
           },
           py::arg("density"), py::arg("n"));

  py::class_<TpcaModel>(m, "TpcaModel")
      .def_property_readonly("sigma", [](const TpcaModel& t) { return t.sigma; })
      .def_property_readonly("w_icdf", [](const TpcaModel& t) { return t.w_icdf; })
      .def_property_readonly("coeffs", [](const TpcaModel& t) { return t.coeffs; })
      .def("project",
           [](const TpcaModel& t, const Eigen::VectorXd& icdf, int n,
              const std::string& policy) {
             auto rec = tpca_project(t, qf_from_array(icdf), n, policy_from_string(policy));
             return py::make_tuple(rec.icdf.values(), rec.measure.density(),
                                   rec.repaired);
           },
           py::arg("icdf"), py::arg("n"), py::arg("policy") = "rearrange")
      .def("interpolate",
           [](const TpcaModel& t, const Eigen::VectorXd& z, int n, int neighbors,
              const std::string& policy) {
             InterpSettings s;
             s.neighbors = neighbors;
             auto rec = tpca_interpolate(t, z, n, s, policy_from_string(policy));
             return py::make_tuple(rec.icdf.values(), rec.measure.density(),
                                   rec.repaired);
           },
           py::arg("z"), py::arg("n"), py::arg("neighbors") = 10,
           py::arg("policy") = "rearrange");

  py::class_<GbarDictionary>(m, "GbarDictionary")
      .def_property_readonly("selected",
                             [](const GbarDictionary& d) { return d.selected; })
      .def_property_readonly("atom_icdfs",
                             [](const GbarDictionary& d) { return d.atom_icdfs; })
      .def_property_readonly(
          "residual_history",
          [](const GbarDictionary& d) { return d.residual_history; })
      .def("__len__", &GbarDictionary::size)
      .def("project",
           [](const GbarDictionary& d, const Eigen::VectorXd& icdf, int n) {
             auto rec = gbar_project(d, qf_from_array(icdf), n);
             return py::make_tuple(rec.icdf.values(), rec.weights.lambda, rec.residual);
           },
           py::arg("icdf"), py::arg("n"))
      .def("interpolate",
           [](const GbarDictionary& d, const Eigen::VectorXd& z, int n, int neighbors) {
             InterpSettings s;
             s.neighbors = neighbors;
             auto rec = gbar_interpolate(d, z, n, s);
             return py::make_tuple(rec.icdf.values(), rec.weights.lambda);
           },
           py::arg("z"), py::arg("n"), py::arg("neighbors") = 10);

  m.def("pca_fit", &pca_fit, py::arg("snapshots"), py::arg("centered") = false);
  m.def("tpca_fit", &tpca_fit, py::arg("snapshots"));
  m.def("gbar_fit", &gbar_fit, py::arg("snapshots"), py::arg("n_max"),
        py::arg("eps") = 0.0);

  // error metrics
  m.def(
      "l2_error",
      [](const Eigen::VectorXd& u, const Eigen::VectorXd& v, const SpatialGrid& g) {
        return l2_error({g, u}, {g, v});
      },
      py::arg("u"), py::arg("v"), py::arg("grid"));
  m.def(
      "hminus1_error",
      [](const Eigen::VectorXd& u, const Eigen::VectorXd& v, const SpatialGrid& g,
         double h) {
        FemMesh mesh(g.x_min, g.x_max,
                     std::max(2, static_cast<int>(std::lround(g.length() / h))));
        return hminus1_error({g, u}, {g, v}, mesh);
      },
      py::arg("u"), py::arg("v"), py::arg("grid"), py::arg("h") = 1e-3);

  m.attr("__version__") = "0.1.0";
}
