#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "odhl/config.hpp"
#include "odhl/diagnostics.hpp"
#include "odhl/snapshot.hpp"

namespace odhl {

struct RunOptions {
  // Off keeps everything in memory (series.csv, snapshots and the config copy
  // are skipped).
  bool write_files = true;
  std::ostream* log = nullptr;
};

struct NamedFit {
  std::string column;
  FitResult fit;
};

struct RunResult {
  std::vector<TimeSeriesRecord> records;
  Snapshot final_state;
  std::vector<NamedFit> fits;
  std::vector<std::string> warnings;
  // Hall-MHD only: max over records of ||div B|| / ||grad B|| (0 when B = 0).
  double max_div_b = 0.0;
  int propagator_fallbacks = 0;
};

// Advances generated initial data to t_end. Rows every `stride` steps plus
// the last step; snapshots at t = 0, at each configured time and at t_end.
// Throws BlowUpError / VacuumError from the step, ConfigError for an eta
// beyond the coercivity bound or an initial E0 over budget, IoError on
// failed writes. The partial series stays on disk.
RunResult run(const RunConfig& config, const RunOptions& options = {});

// Columns fitted for each configured window.
std::vector<std::string> fit_columns(ModelKind model);

struct LinearVerifyResult {
  double max_rel_error = 0.0;
  long long modes = 0;
  long long steps = 0;
  double t = 0.0;
};

// Linear propagation to t_end versus the Pade exponential exp(t_end A) mode
// by mode; relative error ||a_step - a_ref|| / ||a_ref|| over nonzero modes.
LinearVerifyResult linear_verify(const RunConfig& config);

std::string snapshot_name(double t);

}  // namespace odhl
