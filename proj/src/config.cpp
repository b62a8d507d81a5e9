#include "odhl/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace odhl {

namespace pt = boost::property_tree;

namespace {

struct Key {
  const char* name;
  const char* fallback;  // nullptr when required
  const char* doc;
};

// Every accepted key. Anything else in the file is rejected.
constexpr Key kKeys[] = {
    {"model", nullptr, "oldroyd | hallmhd"},
    {"grid.n", nullptr, "modes per direction, even, >= 4"},
    {"grid.L", nullptr, "box side length, > 0"},
    {"time.dt", nullptr, "step, > 0"},
    {"time.t_end", nullptr, "final time, >= 0, a multiple of dt"},
    {"time.stride", "1", "steps between diagnostics rows, >= 1"},
    {"params.gamma", "1.5", "pressure exponent, >= 1"},
    {"params.b", "0.5", "Oldroyd-B slip parameter, in [-1, 1]"},
    {"params.eta", "0.01", "cross-term weight in E_sigma, 0 <= eta <= coercivity bound"},
    {"params.c2", "1.0", "Fourier-splitting constant C2, > 0"},
    {"params.hall", "on", "Hall term on | off"},
    {"ic.seed", "42", "64-bit phase seed"},
    {"ic.amplitude", "0.01", "epsilon, >= 0"},
    {"ic.cutoff", "1.0", "flat-spectrum radius xi_c, > 0"},
    {"ic.tail_exponent", "4", "spectral decay beyond xi_c, >= 0"},
    {"ic.energy_budget", "inf", "upper bound on E0(0)"},
    {"output.dir", "out", "output directory"},
    {"output.snapshots", "", "extra snapshot times, comma separated"},
    {"run.nonlinear", "on", "nonlinear terms on | off"},
    {"fit.windows", "", "decay-fit windows t0:t1, comma separated"},
};

const Key* find_key(const std::string& name) {
  for (const Key& k : kKeys)
    if (name == k.name) return &k;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& key, const std::string& v, bool allow_inf = false) {
  const std::string t = trim(v);
  if (allow_inf && t == "inf") return std::numeric_limits<double>::infinity();
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || errno == ERANGE || !std::isfinite(x))
    throw ConfigError(key, "expected a real number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(t.c_str(), &end, 10);
  if (t.empty() || *end != '\0' || errno == ERANGE)
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  errno = 0;
  char* end = nullptr;
  const unsigned long long x = std::strtoull(t.c_str(), &end, 10);
  if (t.empty() || t[0] == '-' || *end != '\0' || errno == ERANGE)
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + v + "'");
  return x;
}

bool to_switch(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "on" || t == "true") return true;
  if (t == "off" || t == "false") return false;
  throw ConfigError(key, "expected on or off, got '" + v + "'");
}

void require(bool ok, const std::string& key, const std::string& constraint) {
  if (!ok) throw ConfigError(key, "must satisfy " + constraint);
}

}  // namespace

const char* model_name(ModelKind m) {
  return m == ModelKind::oldroyd ? "oldroyd" : "hallmhd";
}

long long RunConfig::steps() const {
  const double q = t_end / dt;
  const long long k = std::llround(q);
  if (std::abs(q - static_cast<double>(k)) > 1e-9 * std::max(1.0, q))
    throw ConfigError("time.t_end", "must be an integer multiple of time.dt");
  return k;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("<file>", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  std::map<std::string, std::string> values;
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      values[name] = node.data();
      continue;
    }
    for (const auto& [sub, leaf] : node) {
      const std::string full = name + "." + sub;
      if (!leaf.empty()) throw ConfigError(full, "nested keys are not supported");
      values[full] = leaf.data();
    }
  }
  for (const auto& [k, v] : values)
    if (!find_key(k)) throw ConfigError(k, "unknown key");

  auto get = [&](const char* name) -> std::string {
    const auto it = values.find(name);
    if (it != values.end()) return it->second;
    const Key* k = find_key(name);
    if (!k->fallback) throw ConfigError(name, "required key missing");
    return k->fallback;
  };

  RunConfig c;
  c.source = text;
  const std::string model = trim(get("model"));
  if (model == "oldroyd")
    c.model = ModelKind::oldroyd;
  else if (model == "hallmhd")
    c.model = ModelKind::hallmhd;
  else
    throw ConfigError("model", "expected oldroyd or hallmhd, got '" + model + "'");

  const long long n = to_integer("grid.n", get("grid.n"));
  require(n >= 4 && n % 2 == 0 && n <= 8192, "grid.n", "even and in [4, 8192]");
  c.n = static_cast<int>(n);
  c.length = to_real("grid.L", get("grid.L"));
  require(c.length > 0.0, "grid.L", "L > 0");

  c.dt = to_real("time.dt", get("time.dt"));
  require(c.dt > 0.0, "time.dt", "dt > 0");
  c.t_end = to_real("time.t_end", get("time.t_end"));
  require(c.t_end >= 0.0, "time.t_end", "t_end >= 0");
  c.steps();
  const long long stride = to_integer("time.stride", get("time.stride"));
  require(stride >= 1 && stride <= 1'000'000'000, "time.stride", "stride >= 1");
  c.stride = static_cast<int>(stride);

  c.gamma = to_real("params.gamma", get("params.gamma"));
  require(c.gamma >= 1.0, "params.gamma", "gamma >= 1");
  c.b = to_real("params.b", get("params.b"));
  require(c.b >= -1.0 && c.b <= 1.0, "params.b", "-1 <= b <= 1");
  c.eta = to_real("params.eta", get("params.eta"));
  require(c.eta >= 0.0, "params.eta", "eta >= 0");
  c.c2 = to_real("params.c2", get("params.c2"));
  require(c.c2 > 0.0, "params.c2", "C2 > 0");
  c.hall = to_switch("params.hall", get("params.hall"));

  c.ic.seed = to_u64("ic.seed", get("ic.seed"));
  c.ic.amplitude = to_real("ic.amplitude", get("ic.amplitude"));
  require(c.ic.amplitude >= 0.0, "ic.amplitude", "amplitude >= 0");
  c.ic.cutoff = to_real("ic.cutoff", get("ic.cutoff"));
  require(c.ic.cutoff > 0.0 && c.ic.cutoff <= c.grid().max_wavenumber(), "ic.cutoff",
          "0 < cutoff <= largest grid wavenumber");
  c.ic.tail_exponent = to_real("ic.tail_exponent", get("ic.tail_exponent"));
  require(c.ic.tail_exponent >= 0.0, "ic.tail_exponent", "tail_exponent >= 0");
  c.energy_budget = to_real("ic.energy_budget", get("ic.energy_budget"), true);
  require(c.energy_budget > 0.0, "ic.energy_budget", "budget > 0");

  c.output_dir = trim(get("output.dir"));
  require(!c.output_dir.empty(), "output.dir", "non-empty path");
  for (const std::string& item : split_list(get("output.snapshots"))) {
    const double t = to_real("output.snapshots", item);
    require(t >= 0.0 && t <= c.t_end, "output.snapshots", "0 <= t <= t_end");
    c.snapshot_times.push_back(t);
  }
  c.nonlinear = to_switch("run.nonlinear", get("run.nonlinear"));
  for (const std::string& item : split_list(get("fit.windows"))) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("fit.windows", "expected t0:t1, got '" + item + "'");
    const double t0 = to_real("fit.windows", item.substr(0, colon));
    const double t1 = to_real("fit.windows", item.substr(colon + 1));
    require(t0 >= 0.0 && t1 > t0, "fit.windows", "0 <= t0 < t1");
    c.fit_windows.emplace_back(t0, t1);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_reference() {
  std::ostringstream os;
  os << "Config keys (INI; `model` at top level, the rest as [section] key = value):\n";
  for (const Key& k : kKeys) {
    os << "  " << k.name;
    if (!k.fallback)
      os << " (required)";
    else if (*k.fallback)
      os << " = " << k.fallback;
    os << "\n      " << k.doc << "\n";
  }
  return os.str();
}

double saturation_time(double length) {
  const double r = length / (2.0 * kPi);
  return r * r;
}

std::vector<std::string> config_warnings(const RunConfig& c) {
  std::vector<std::string> out;
  const double limit = std::min(c.t_end, 0.3 * saturation_time(c.length));
  for (const auto& [t0, t1] : c.fit_windows)
    if (t1 > limit) {
      std::ostringstream os;
      os << "fit window " << t0 << ":" << t1 << " ends after min(t_end, 0.3 t*) = " << limit
         << "; decay saturates on the torus near t* = " << saturation_time(c.length);
      out.push_back(os.str());
    }
  return out;
}

}  // namespace odhl
