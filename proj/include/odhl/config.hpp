#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "odhl/initial_data.hpp"

namespace odhl {

enum class ModelKind { oldroyd, hallmhd };

const char* model_name(ModelKind m);

struct RunConfig {
  ModelKind model = ModelKind::oldroyd;
  int n = 0;
  double length = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  int stride = 1;

  double gamma = 1.5;
  double b = 0.5;
  double eta = 0.01;
  double c2 = 1.0;
  bool hall = true;

  IcSpec ic;
  // E0(0) must not exceed this before a run starts.
  double energy_budget = std::numeric_limits<double>::infinity();

  std::string output_dir = "out";
  std::vector<double> snapshot_times;
  bool nonlinear = true;
  std::vector<std::pair<double, double>> fit_windows;

  std::string source;  // the text this was parsed from

  Grid grid() const { return Grid(n, length); }
  long long steps() const;
  OldroydParams oldroyd_params() const { return {gamma, b, kDefaultDensityFloor}; }
  HallMhdParams hallmhd_params() const { return {gamma, hall, kDefaultDensityFloor}; }
};

// INI text: top-level `model`, sections [grid], [time], [params], [ic],
// [output], [run], [fit]. Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Key reference with defaults, for --help.
std::string config_reference();

// Decay on the torus saturates near t* = (L / 2 pi)^2.
double saturation_time(double length);
// Human-readable warnings, one per fit window ending after min(t_end, 0.3 t*).
std::vector<std::string> config_warnings(const RunConfig& c);

}  // namespace odhl
