#include "odhl/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "odhl/initial_data.hpp"
#include "odhl/integrator.hpp"

namespace odhl {

namespace fs = std::filesystem;

namespace {

OldroydParams params_for(const RunConfig& c, const OldroydModel*) { return c.oldroyd_params(); }
HallMhdParams params_for(const RunConfig& c, const HallMhdModel*) { return c.hallmhd_params(); }

double div_b_ratio(const OldroydState&) { return 0.0; }

double div_b_ratio(const HallMhdState& s) {
  const Grid& g = s.grid();
  double div2 = 0.0, grad2 = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      div2 += std::norm(g.wavenumber(i1) * s.B[0][k] + g.wavenumber(i2) * s.B[1][k]);
      grad2 += g.xi_squared(i1, i2) * (std::norm(s.B[0][k]) + std::norm(s.B[1][k]));
    }
  return grad2 > 0.0 ? std::sqrt(div2 / grad2) : 0.0;
}

class Output {
 public:
  Output(const RunConfig& c, bool enabled) : enabled_(enabled), dir_(c.output_dir) {
    if (!enabled_) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create " + dir_.string() + ": " + ec.message());
    {
      std::ofstream cfg(dir_ / "config.ini", std::ios::binary | std::ios::trunc);
      if (!cfg) throw IoError("cannot write " + (dir_ / "config.ini").string());
      cfg << c.source;
      if (!cfg) throw IoError("write failed: " + (dir_ / "config.ini").string());
    }
    series_.open(dir_ / "series.csv", std::ios::binary | std::ios::trunc);
    if (!series_) throw IoError("cannot write " + (dir_ / "series.csv").string());
    write_series_header(series_);
  }

  void row(const TimeSeriesRecord& r) {
    if (!enabled_) return;
    write_series_row(series_, r);
    series_.flush();
    if (!series_) throw IoError("write failed: " + (dir_ / "series.csv").string());
  }

  void snapshot(const Snapshot& s) {
    if (enabled_) write_snapshot((dir_ / snapshot_name(s.t)).string(), s);
  }

 private:
  bool enabled_;
  fs::path dir_;
  std::ofstream series_;
};

template <class Model>
RunResult run_model(const RunConfig& c, const RunOptions& opt) {
  const Grid grid = c.grid();
  const auto params = params_for(c, static_cast<const Model*>(nullptr));
  const double cap = eta_max(grid);
  if (c.eta > cap)
    throw ConfigError("params.eta", "exceeds the coercivity threshold " + std::to_string(cap));
  const long long steps = c.steps();

  RunResult result;
  result.warnings = config_warnings(c);
  if (opt.log)
    for (const auto& w : result.warnings) *opt.log << "warning: " << w << "\n";

  typename Model::State state = generate<Model>(c.ic, grid, params);
  const FilterBank bank(grid);
  const DiagnosticsParams dp{c.eta, c.c2};
  Stepper<Model> stepper(grid, c.dt, params, c.nonlinear);
  result.propagator_fallbacks = stepper.table().fallback_count();

  Output out(c, opt.write_files);
  Trackers trackers;
  auto record = [&](double t) {
    TimeSeriesRecord r = measure(state, t, dp, bank);
    trackers = update_trackers(trackers, r);
    r.n_tracker = trackers.N;
    r.m_tracker = trackers.M;
    result.records.push_back(r);
    result.max_div_b = std::max(result.max_div_b, div_b_ratio(state));
    out.row(r);
    return r;
  };

  const TimeSeriesRecord first = record(0.0);
  if (first.E0 > c.energy_budget)
    throw ConfigError("ic.energy_budget", "initial E0 = " + std::to_string(first.E0) +
                                              " exceeds the budget");
  out.snapshot(make_snapshot(state, 0.0));

  std::vector<long long> snap_steps;
  for (double ts : c.snapshot_times) snap_steps.push_back(std::llround(ts / c.dt));

  for (long long k = 1; k <= steps; ++k) {
    stepper.advance(state, static_cast<double>(k - 1) * c.dt);
    const double t = static_cast<double>(k) * c.dt;
    if (k % c.stride == 0 || k == steps) record(t);
    for (long long s : snap_steps)
      if (s == k && k != steps) {
        out.snapshot(make_snapshot(state, t));
        break;
      }
    if (opt.log && steps >= 10 && k % (steps / 10) == 0)
      *opt.log << "t=" << t << " E0=" << result.records.back().E0 << "\n";
  }
  result.final_state = make_snapshot(state, static_cast<double>(steps) * c.dt);
  if (steps > 0) out.snapshot(result.final_state);

  for (const auto& [t0, t1] : c.fit_windows)
    for (const std::string& col : fit_columns(c.model)) {
      try {
        result.fits.push_back({col, fit_decay(result.records, col, t0, t1)});
      } catch (const FitError& e) {
        result.warnings.push_back("fit " + col + ": " + e.what());
      }
    }
  return result;
}

template <class Model>
LinearVerifyResult verify_model(const RunConfig& c) {
  const Grid grid = c.grid();
  const auto params = params_for(c, static_cast<const Model*>(nullptr));
  const typename Model::State initial = generate<Model>(c.ic, grid, params);
  typename Model::State state = initial;
  Stepper<Model> stepper(grid, c.dt, params, false);
  const long long steps = c.steps();
  for (long long k = 0; k < steps; ++k) stepper.advance(state, static_cast<double>(k) * c.dt);

  LinearVerifyResult r;
  r.steps = steps;
  r.t = static_cast<double>(steps) * c.dt;
  const auto a0 = Model::fields(initial);
  const auto a1 = Model::fields(state);
  for (const CanonicalMode& m : canonical_modes(grid)) {
    Eigen::VectorXcd x0(Model::kDim), x1(Model::kDim);
    for (int i = 0; i < Model::kDim; ++i) {
      x0(i) = (*a0[i])[m.index];
      x1(i) = (*a1[i])[m.index];
    }
    if (x0.norm() == 0.0) continue;
    const Eigen::MatrixXcd a = Model::symbol(grid.wavenumber(m.i1), grid.wavenumber(m.i2), params);
    const Eigen::VectorXcd ref = expm_pade(r.t * a) * x0;
    const double scale = ref.norm();
    if (scale == 0.0) continue;
    r.max_rel_error = std::max(r.max_rel_error, (x1 - ref).norm() / scale);
    ++r.modes;
  }
  return r;
}

}  // namespace

std::vector<std::string> fit_columns(ModelKind model) {
  if (model == ModelKind::oldroyd) return {"l2_rho_u", "l2_extra", "h1_grad"};
  return {"l2_all", "h1_grad"};
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_%.10g.odhl", t);
  return buf;
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  if (config.model == ModelKind::oldroyd) return run_model<OldroydModel>(config, options);
  return run_model<HallMhdModel>(config, options);
}

LinearVerifyResult linear_verify(const RunConfig& config) {
  if (config.model == ModelKind::oldroyd) return verify_model<OldroydModel>(config);
  return verify_model<HallMhdModel>(config);
}

}  // namespace odhl
