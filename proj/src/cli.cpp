#include "odhl/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "odhl/run.hpp"

namespace odhl {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_fit_header(std::ostream& out) {
  out << "column,exponent,intercept,residual_rms,t0,t1,samples\n";
}

void print_fit(std::ostream& out, const std::string& column, const FitResult& f) {
  out << column << ',' << fmt(f.exponent) << ',' << fmt(f.intercept) << ','
      << fmt(f.residual_rms) << ',' << fmt(f.t0) << ',' << fmt(f.t1) << ',' << f.samples
      << '\n';
}

std::pair<double, double> parse_window(const std::string& w) {
  const auto colon = w.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--window", "expected t0:t1");
  try {
    return {std::stod(w.substr(0, colon)), std::stod(w.substr(colon + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--window", "expected t0:t1 with real numbers");
  }
}

int cmd_run(const std::string& path, const std::string& out_dir, bool quiet, std::ostream& out,
            std::ostream& err) {
  RunConfig c = load_config(path);
  if (!out_dir.empty()) c.output_dir = out_dir;
  RunOptions opt;
  opt.log = quiet ? nullptr : &err;
  const RunResult r = run(c, opt);
  out << "model=" << model_name(c.model) << " rows=" << r.records.size()
      << " t_end=" << fmt(r.final_state.t) << " dir=" << c.output_dir << "\n";
  if (c.model == ModelKind::hallmhd) out << "max_div_b_ratio=" << fmt(r.max_div_b) << "\n";
  for (const auto& w : r.warnings) err << "warning: " << w << "\n";
  if (!r.fits.empty()) {
    print_fit_header(out);
    for (const NamedFit& f : r.fits) print_fit(out, f.column, f.fit);
  }
  return kExitOk;
}

int cmd_linear_verify(const std::string& path, double tol, std::ostream& out) {
  const RunConfig c = load_config(path);
  const LinearVerifyResult r = linear_verify(c);
  out << "model=" << model_name(c.model) << " t=" << fmt(r.t) << " steps=" << r.steps
      << " modes=" << r.modes << " max_rel_error=" << fmt(r.max_rel_error) << "\n";
  return r.max_rel_error <= tol ? kExitOk : kExitCheckFailed;
}

int cmd_fit(const std::string& path, const std::string& column, const std::string& window,
            bool header, std::ostream& out) {
  if (!is_column(column)) throw CLI::ValidationError("--column", "unknown column " + column);
  const auto [t0, t1] = parse_window(window);
  const auto records = read_series_file(path);
  const FitResult f = fit_decay(records, column, t0, t1);
  if (header) print_fit_header(out);
  print_fit(out, column, f);
  return kExitOk;
}

int cmd_lp(const std::string& path, double s, const std::string& field, std::ostream& out) {
  const Snapshot snap = read_snapshot(path);
  const FilterBank bank(snap.grid);
  std::vector<WeightedField> fs;
  const auto& f = snap.fields;
  const bool tensor = snap.model == ModelKind::oldroyd;
  if (field == "all" || field == "rho") fs.push_back({&f[0], 1.0});
  if (field == "all" || field == "u") {
    fs.push_back({&f[1], 1.0});
    fs.push_back({&f[2], 1.0});
  }
  if (field == "all" || field == "extra")
    for (std::size_t i = 3; i < f.size(); ++i)
      fs.push_back({&f[i], tensor && i == 4 ? 2.0 : 1.0});
  const std::vector<double> blocks = block_norms(fs, bank);
  out << "j,scale,block_l2,weighted\n";
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    const double b = blocks[j - bank.j_min()];
    out << j << ',' << fmt(std::exp2(j)) << ',' << fmt(b) << ',' << fmt(std::exp2(j * s) * b)
        << '\n';
  }
  return kExitOk;
}

int cmd_analyze(const std::string& path, double dt, double factor, std::ostream& out,
                std::ostream& err) {
  std::vector<TimeSeriesRecord> records = read_series_file(path);
  if (records.empty()) throw FormatError("series holds no rows");
  std::string dt_source = "--dt";
  if (!(dt > 0.0)) {
    const auto cfg = std::filesystem::path(path).parent_path() / "config.ini";
    if (std::filesystem::exists(cfg)) {
      dt = load_config(cfg.string()).dt;
      dt_source = cfg.string();
    } else {
      dt = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < records.size(); ++k)
        dt = std::min(dt, records[k].t - records[k - 1].t);
      dt_source = "row spacing";
      if (!std::isfinite(dt) || !(dt > 0.0)) {
        err << "cannot infer dt from a single row; pass --dt\n";
        return kExitUsage;
      }
    }
  }

  bool ok = true;
  out << "dt=" << fmt(dt) << " (" << dt_source << ")\n";
  for (int sigma = 0; sigma <= 1; ++sigma) {
    const double v = energy_inequality_check(records, sigma);
    const double e0 = sigma == 0 ? records.front().E0 : records.front().E1;
    const double threshold = factor * e0 / dt;
    const bool pass = v <= threshold;
    ok = ok && pass;
    out << "energy_inequality sigma=" << sigma << " worst=" << fmt(v)
        << " threshold=" << fmt(threshold) << (pass ? " ok" : " VIOLATED") << "\n";
  }
  std::vector<TimeSeriesRecord> again = records;
  fill_trackers(again);
  double dn = 0.0, dm = 0.0;
  for (std::size_t k = 0; k < records.size(); ++k) {
    dn = std::max(dn, std::abs(again[k].n_tracker - records[k].n_tracker));
    dm = std::max(dm, std::abs(again[k].m_tracker - records[k].m_tracker));
  }
  const bool trackers_ok = dn == 0.0 && dm == 0.0;
  ok = ok && trackers_ok;
  out << "trackers N=" << fmt(again.back().n_tracker) << " M=" << fmt(again.back().m_tracker)
      << " max_diff_N=" << fmt(dn) << " max_diff_M=" << fmt(dm)
      << (trackers_ok ? " ok" : " MISMATCH") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressible Oldroyd-B / Hall-MHD pseudo-spectral decay simulator"};
  app.require_subcommand(1);
  app.footer(config_reference());

  std::string config_path, out_dir, csv_path, column, window, snap_path, field = "all";
  bool quiet = false, header = false;
  double tol = 1e-8, s = -1.0, dt = 0.0, factor = 1e-6;

  auto* run_cmd = app.add_subcommand("run", "advance generated initial data, write series.csv and snapshots");
  run_cmd->add_option("config", config_path, "INI config file")->required();
  run_cmd->add_option("--out", out_dir, "override output.dir");
  run_cmd->add_flag("-q,--quiet", quiet, "no progress on stderr");

  auto* lin_cmd = app.add_subcommand("linear-verify", "linear steps vs per-mode matrix exponentials");
  lin_cmd->add_option("config", config_path, "INI config file")->required();
  lin_cmd->add_option("--tol", tol, "pass threshold on the max relative error")->capture_default_str();

  auto* fit_cmd = app.add_subcommand("fit", "power-law fit of one series column against 1 + t");
  fit_cmd->add_option("series", csv_path, "series.csv")->required();
  fit_cmd->add_option("--column", column, "column name, or l2_rho_u / l2_all")->required();
  fit_cmd->add_option("--window", window, "t0:t1")->required();
  fit_cmd->add_flag("--header", header, "print the CSV header first");

  auto* lp_cmd = app.add_subcommand("lp", "per-block Littlewood-Paley norms of a snapshot");
  lp_cmd->add_option("snapshot", snap_path, "snapshot file")->required();
  lp_cmd->add_option("--s", s, "Besov index for the weighted column")->capture_default_str();
  lp_cmd->add_option("--field", field, "all | rho | u | extra")
      ->check(CLI::IsMember({"all", "rho", "u", "extra"}))
      ->capture_default_str();

  auto* an_cmd = app.add_subcommand("analyze", "energy-inequality check and tracker recomputation");
  an_cmd->add_option("series", csv_path, "series.csv")->required();
  an_cmd->add_option("--dt", dt, "time step (default: config.ini beside the series)");
  an_cmd->add_option("--factor", factor, "threshold factor c in c E(0) / dt")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, out_dir, quiet, out, err);
    if (*lin_cmd) return cmd_linear_verify(config_path, tol, out);
    if (*fit_cmd) return cmd_fit(csv_path, column, window, header, out);
    if (*lp_cmd) return cmd_lp(snap_path, s, field, out);
    if (*an_cmd) return cmd_analyze(csv_path, dt, factor, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const VacuumError& e) {
    err << "vacuum: " << e.what() << "\n";
    return kExitBlowUp;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FitError& e) {
    err << "fit error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace odhl
