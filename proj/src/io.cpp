#include "wrom/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace wrom {

namespace {

void write_raw(std::ofstream& os, const void* p, size_t n) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void read_raw(std::ifstream& is, void* p, size_t n) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (!is) throw Error("truncated binary file");
}

void write_u32(std::ofstream& os, std::uint32_t v) { write_raw(os, &v, 4); }
void write_f64(std::ofstream& os, double v) { write_raw(os, &v, 8); }
std::uint32_t read_u32(std::ifstream& is) {
  std::uint32_t v;
  read_raw(is, &v, 4);
  return v;
}
double read_f64(std::ifstream& is) {
  double v;
  read_raw(is, &v, 8);
  return v;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + p.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw Error("cannot open for reading: " + p.string());
  return is;
}

void write_matrix_rowmajor(std::ofstream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) write_f64(os, m(r, c));
}

void read_matrix_rowmajor(std::ifstream& is, Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = read_f64(is);
}

}  // namespace

void write_quantile_batch(const std::filesystem::path& path, const QuantileBatch& b) {
  auto os = open_out(path);
  write_raw(os, "WQB1", 4);
  write_u32(os, static_cast<std::uint32_t>(b.n_quad));
  write_u32(os, static_cast<std::uint32_t>(b.rows.rows()));
  write_f64(os, b.x_min);
  write_f64(os, b.x_max);
  write_matrix_rowmajor(os, b.rows);
}

QuantileBatch read_quantile_batch(const std::filesystem::path& path) {
  auto is = open_in(path);
  char magic[4];
  read_raw(is, magic, 4);
  if (std::memcmp(magic, "WQB1", 4) != 0) throw Error("bad quantile batch magic");
  QuantileBatch b;
  b.n_quad = static_cast<int>(read_u32(is));
  const auto count = read_u32(is);
  b.x_min = read_f64(is);
  b.x_max = read_f64(is);
  b.rows.resize(count, b.n_quad);
  read_matrix_rowmajor(is, b.rows);
  return b;
}

void write_arrays(const std::filesystem::path& path, const ArrayMap& arrays) {
  auto os = open_out(path);
  write_raw(os, "WARR", 4);
  write_u32(os, static_cast<std::uint32_t>(arrays.size()));
  for (const auto& [name, m] : arrays) {
    const std::uint16_t len = static_cast<std::uint16_t>(name.size());
    write_raw(os, &len, 2);
    write_raw(os, name.data(), len);
    write_u32(os, static_cast<std::uint32_t>(m.rows()));
    write_u32(os, static_cast<std::uint32_t>(m.cols()));
    write_matrix_rowmajor(os, m);
  }
}

ArrayMap read_arrays(const std::filesystem::path& path) {
  auto is = open_in(path);
  char magic[4];
  read_raw(is, magic, 4);
  if (std::memcmp(magic, "WARR", 4) != 0) throw Error("bad array container magic");
  ArrayMap out;
  const auto n = read_u32(is);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint16_t len;
    read_raw(is, &len, 2);
    std::string name(len, '\0');
    read_raw(is, name.data(), len);
    const auto rows = read_u32(is);
    const auto cols = read_u32(is);
    Eigen::MatrixXd m(rows, cols);
    read_matrix_rowmajor(is, m);
    out.emplace(std::move(name), std::move(m));
  }
  return out;
}

namespace {

nlohmann::json family_to_json(const ProblemFamily& f) {
  nlohmann::json j;
  j["family"] = family_name(f.family);
  j["box"] = nlohmann::json::object();
  for (int i = 0; i < f.box.dim(); ++i)
    j["box"][f.box.names[i]] = {f.box.bounds(i, 0), f.box.bounds(i, 1)};
  j["param_order"] = f.box.names;
  j["grid"] = {{"x_min", f.grid.x_min}, {"x_max", f.grid.x_max}, {"n_cells", f.grid.n_cells}};
  j["n_quad"] = f.qgrid.n_quad;
  j["viscous"] = {{"cfl", f.viscous.cfl}};
  j["peakon"] = {{"tol", f.peakon.tol}, {"alpha", f.peakon.alpha},
                 {"p1", f.peakon.p1},  {"p2", f.peakon.p2},
                 {"q2", f.peakon.q2}};
  return j;
}

ProblemFamily family_from_json(const nlohmann::json& j) {
  ProblemFamily f;
  f.family = family_from_name(j.at("family"));
  const auto names = j.at("param_order").get<std::vector<std::string>>();
  f.box.names = names;
  f.box.bounds.resize(static_cast<Eigen::Index>(names.size()), 2);
  for (size_t i = 0; i < names.size(); ++i) {
    const auto& b = j.at("box").at(names[i]);
    f.box.bounds(static_cast<Eigen::Index>(i), 0) = b[0];
    f.box.bounds(static_cast<Eigen::Index>(i), 1) = b[1];
  }
  const auto& g = j.at("grid");
  f.grid = SpatialGrid(g.at("x_min"), g.at("x_max"), g.at("n_cells"));
  f.qgrid = QuantileGrid(j.at("n_quad"));
  f.viscous.cfl = j.at("viscous").at("cfl");
  const auto& p = j.at("peakon");
  f.peakon = {p.at("tol"), p.at("alpha"), p.at("p1"), p.at("p2"), p.at("q2")};
  return f;
}

Eigen::MatrixXd scalar(double v) {
  Eigen::MatrixXd m(1, 1);
  m(0, 0) = v;
  return m;
}

Eigen::MatrixXd grid_array(const SpatialGrid& g) {
  Eigen::MatrixXd m(1, 3);
  m << g.x_min, g.x_max, static_cast<double>(g.n_cells);
  return m;
}

SpatialGrid grid_from_array(const Eigen::MatrixXd& m) {
  return SpatialGrid(m(0, 0), m(0, 1), static_cast<int>(m(0, 2)));
}

}  // namespace

void save_snapshot_set(const std::filesystem::path& dir, const SnapshotSet& set) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = family_to_json(set.family);
  manifest["seed"] = set.seed;
  manifest["count"] = set.size();
  manifest["files"] = {{"params", "params.bin"},
                       {"icdfs", "icdfs.bin"},
                       {"densities", "densities.bin"},
                       {"walltime", "walltime.bin"}};
  std::ofstream mf(dir / "manifest.json");
  mf << manifest.dump(2) << "\n";

  write_arrays(dir / "params.bin", {{"params", set.params}, {"masses", set.masses}});
  write_quantile_batch(dir / "icdfs.bin",
                       {set.family.qgrid.n_quad, set.family.grid.x_min,
                        set.family.grid.x_max, set.icdfs});
  write_arrays(dir / "densities.bin", {{"densities", set.densities}});
  write_arrays(dir / "walltime.bin", {{"walltime", set.walltime}});
}

SnapshotSet load_snapshot_set(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw Error("missing manifest: " + (dir / "manifest.json").string());
  nlohmann::json manifest = nlohmann::json::parse(mf);
  SnapshotSet set;
  set.family = family_from_json(manifest);
  set.seed = manifest.at("seed");
  auto pm = read_arrays(dir / "params.bin");
  set.params = pm.at("params");
  set.masses = pm.at("masses");
  set.icdfs = read_quantile_batch(dir / "icdfs.bin").rows;
  set.densities = read_arrays(dir / "densities.bin").at("densities");
  set.walltime = read_arrays(dir / "walltime.bin").at("walltime");
  return set;
}

void save_pca(const std::filesystem::path& path, const PcaModel& m) {
  write_arrays(path, {{"grid", grid_array(m.grid)},
                      {"centered", scalar(m.centered ? 1.0 : 0.0)},
                      {"mean", m.mean},
                      {"modes", m.modes},
                      {"sigma", m.sigma},
                      {"coeffs", m.coeffs},
                      {"params", m.params}});
}

PcaModel load_pca(const std::filesystem::path& path) {
  auto a = read_arrays(path);
  PcaModel m;
  m.grid = grid_from_array(a.at("grid"));
  m.centered = a.at("centered")(0, 0) != 0.0;
  m.mean = a.at("mean");
  m.modes = a.at("modes");
  m.sigma = a.at("sigma");
  m.coeffs = a.at("coeffs");
  m.params = a.at("params");
  return m;
}

void save_tpca(const std::filesystem::path& path, const TpcaModel& m) {
  write_arrays(path, {{"grid", grid_array(m.grid)},
                      {"n_quad", scalar(m.qgrid.n_quad)},
                      {"w_icdf", m.w_icdf},
                      {"modes", m.modes},
                      {"sigma", m.sigma},
                      {"coeffs", m.coeffs},
                      {"params", m.params}});
}

TpcaModel load_tpca(const std::filesystem::path& path) {
  auto a = read_arrays(path);
  TpcaModel m;
  m.grid = grid_from_array(a.at("grid"));
  m.qgrid = QuantileGrid(static_cast<int>(a.at("n_quad")(0, 0)));
  m.w_icdf = a.at("w_icdf");
  m.modes = a.at("modes");
  m.sigma = a.at("sigma");
  m.coeffs = a.at("coeffs");
  m.params = a.at("params");
  return m;
}

void save_gbar(const std::filesystem::path& path, const GbarDictionary& d) {
  ArrayMap a{{"grid", grid_array(d.grid)},
             {"n_quad", scalar(d.qgrid.n_quad)},
             {"atom_params", d.atom_params},
             {"atom_icdfs", d.atom_icdfs},
             {"residual_history", d.residual_history},
             {"params", d.params}};
  Eigen::MatrixXd sel(static_cast<Eigen::Index>(d.selected.size()), 1);
  for (size_t i = 0; i < d.selected.size(); ++i)
    sel(static_cast<Eigen::Index>(i), 0) = d.selected[i];
  a.emplace("selected", std::move(sel));
  for (size_t k = 0; k < d.weight_tables.size(); ++k)
    a.emplace("table_" + std::to_string(k + 1), d.weight_tables[k]);
  write_arrays(path, a);
}

GbarDictionary load_gbar(const std::filesystem::path& path) {
  auto a = read_arrays(path);
  GbarDictionary d;
  d.grid = grid_from_array(a.at("grid"));
  d.qgrid = QuantileGrid(static_cast<int>(a.at("n_quad")(0, 0)));
  d.atom_params = a.at("atom_params");
  d.atom_icdfs = a.at("atom_icdfs");
  d.residual_history = a.at("residual_history");
  d.params = a.at("params");
  const auto& sel = a.at("selected");
  for (Eigen::Index i = 0; i < sel.rows(); ++i)
    d.selected.push_back(static_cast<int>(sel(i, 0)));
  for (size_t k = 1; k <= d.selected.size(); ++k)
    d.weight_tables.push_back(a.at("table_" + std::to_string(k)));
  return d;
}

}  // namespace wrom
