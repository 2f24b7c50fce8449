#include "wrom/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wrom {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

IniFile IniFile::parse_string(const std::string& text, const std::string& origin) {
  IniFile ini;
  ini.origin_ = origin;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(origin + ":" + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      ini.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    ini.data_[section][key] = value;
  }
  return ini;
}

IniFile IniFile::parse_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_string(buf.str(), path.string());
}

bool IniFile::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  return s != data_.end() && s->second.count(key) > 0;
}

std::string IniFile::get(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return fallback;
  const auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

double IniFile::get_double(const std::string& section, const std::string& key,
                           double fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key, "");
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config [" + section + "] " + key + ": not a number: " + v);
  }
}

long IniFile::get_long(const std::string& section, const std::string& key,
                       long fallback) const {
  const double d = get_double(section, key, static_cast<double>(fallback));
  return static_cast<long>(d);
}

bool IniFile::get_bool(const std::string& section, const std::string& key,
                       bool fallback) const {
  if (!has(section, key)) return fallback;
  std::string v = get(section, key, "");
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config [" + section + "] " + key + ": not a boolean: " + v);
}

std::vector<double> IniFile::get_list(const std::string& section,
                                      const std::string& key) const {
  std::vector<double> out;
  std::istringstream is(get(section, key, ""));
  std::string tok;
  while (is >> tok) {
    std::replace(tok.begin(), tok.end(), ',', ' ');
    if (trim(tok).empty()) continue;
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("config [" + section + "] " + key + ": bad list entry: " + tok);
    }
  }
  return out;
}

const std::map<std::string, std::string>& IniFile::section(const std::string& name) const {
  static const std::map<std::string, std::string> empty;
  const auto s = data_.find(name);
  return s == data_.end() ? empty : s->second;
}

namespace {

std::vector<int> to_ints(const std::vector<double>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (double d : v) out.push_back(static_cast<int>(d));
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_ini(const IniFile& ini) {
  ExperimentConfig c;
  c.family = family_from_name(ini.get("experiment", "family", "transport"));
  c.train_size = static_cast<int>(ini.get_long("experiment", "train_size", 200));
  c.train_seed = static_cast<std::uint64_t>(ini.get_long("experiment", "train_seed", 42));
  c.test_size = static_cast<int>(ini.get_long("experiment", "test_size", 500));
  c.test_seed = static_cast<std::uint64_t>(ini.get_long("experiment", "test_seed", 4242));
  if (ini.has("experiment", "ranks")) c.ranks = to_ints(ini.get_list("experiment", "ranks"));
  if (!std::is_sorted(c.ranks.begin(), c.ranks.end()))
    throw ConfigError("config [experiment] ranks must be ascending");
  if (ini.has("experiment", "metrics"))
    c.metrics = split_words(ini.get("experiment", "metrics", ""));
  for (const auto& m : c.metrics)
    if (m != "l2" && m != "w2" && m != "hm1")
      throw ConfigError("config [experiment] metrics: unknown metric " + m);
  const std::string rep = ini.get("experiment", "repair", "rearrange");
  if (rep == "rearrange")
    c.repair = MonotonePolicy::rearrange;
  else if (rep == "reject")
    c.repair = MonotonePolicy::reject;
  else
    throw ConfigError("config [experiment] repair: expected rearrange|reject");
  c.output = ini.get("experiment", "output", "");
  c.dump_index = static_cast<int>(ini.get_long("experiment", "dump_index", 0));
  if (ini.has("experiment", "dump_ranks"))
    c.dump_ranks = to_ints(ini.get_list("experiment", "dump_ranks"));

  c.n_quad = static_cast<int>(ini.get_long("grids", "n_quad", 1024));
  c.n_cells = static_cast<int>(ini.get_long("grids", "n_cells", 0));
  c.fem_h = ini.get_double("grids", "fem_h", 1e-3);

  const std::string pol = ini.get("interp", "policy", "knn");
  if (pol == "knn")
    c.interp.policy = InterpSettings::Policy::knn;
  else if (pol == "ball")
    c.interp.policy = InterpSettings::Policy::ball;
  else
    throw ConfigError("config [interp] policy: expected knn|ball");
  c.interp.neighbors = static_cast<int>(ini.get_long("interp", "neighbors", 10));
  c.interp.radius = ini.get_double("interp", "radius", 0.0);
  c.interp.ridge = ini.get_double("interp", "ridge", 1e-10);

  c.gbar_n_max = static_cast<int>(ini.get_long("models", "gbar_n_max", 0));
  c.gbar_eps = ini.get_double("models", "gbar_eps", 0.0);
  c.pca_centered = ini.get_bool("models", "pca_centered", false);

  if (ini.has("sweep", "sizes")) c.sweep.sizes = to_ints(ini.get_list("sweep", "sizes"));
  c.sweep.realizations = static_cast<int>(ini.get_long("sweep", "realizations", 10));
  if (ini.has("sweep", "ranks")) c.sweep.ranks = to_ints(ini.get_list("sweep", "ranks"));

  c.runtime_rank = static_cast<int>(ini.get_long("runtime", "rank", 20));
  c.runtime_repeats = static_cast<int>(ini.get_long("runtime", "repeats", 3));

  for (const auto& [key, value] : ini.section("thresholds")) {
    // model.metric.n.stat = bound
    std::vector<std::string> parts;
    std::string tok;
    std::istringstream ks(key);
    while (std::getline(ks, tok, '.')) parts.push_back(tok);
    if (parts.size() != 4)
      throw ConfigError("config [thresholds] " + key +
                        ": expected model.metric.n.stat");
    ThresholdSpec t;
    t.model = parts[0];
    t.metric = parts[1];
    t.n = std::stoi(parts[2]);
    t.stat = parts[3];
    if (t.stat != "e_av" && t.stat != "e_wc")
      throw ConfigError("config [thresholds] " + key + ": stat must be e_av|e_wc");
    t.bound = std::stod(value);
    c.thresholds.push_back(t);
  }

  if (c.train_size < 2 || c.test_size < 1)
    throw ConfigError("config: train_size >= 2 and test_size >= 1 required");
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  return from_ini(IniFile::parse_file(path));
}

ProblemFamily ExperimentConfig::problem_family() const {
  return ProblemFamily::defaults(family, n_quad, n_cells);
}

std::string ExperimentConfig::hash() const {
  // FNV-1a over a canonical rendering; stability matters, cryptography does not
  std::ostringstream os;
  os << family_name(family) << '|' << train_size << '|' << train_seed << '|'
     << test_size << '|' << test_seed << '|' << n_quad << '|' << n_cells << '|';
  for (int r : ranks) os << r << ',';
  os << '|' << static_cast<int>(repair) << '|' << interp.neighbors << '|'
     << interp.radius << '|' << interp.ridge << '|' << gbar_n_max << '|' << gbar_eps
     << '|' << pca_centered << '|' << fem_h << '|' << runtime_rank;
  const std::string s = os.str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace wrom
