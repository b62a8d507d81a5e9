#include "odhl/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace odhl {

namespace {

// Per-mode view shared by both models: rho, u, and the third field's squared
// (Frobenius) modulus.
struct ModeView {
  double xi1, xi2, r2;
  Complex rho, u0, u1;
  double extra2;
};

template <class Fn>
void for_each_mode(const OldroydState& s, Fn&& fn) {
  const Grid& g = s.grid();
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      const double extra = std::norm(s.tau.xx[k]) + 2.0 * std::norm(s.tau.xy[k]) +
                           std::norm(s.tau.yy[k]);
      fn(ModeView{g.wavenumber(i1), g.wavenumber(i2), g.xi_squared(i1, i2), s.rho[k],
                  s.u[0][k], s.u[1][k], extra});
    }
}

template <class Fn>
void for_each_mode(const HallMhdState& s, Fn&& fn) {
  const Grid& g = s.grid();
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      const double extra = std::norm(s.B[0][k]) + std::norm(s.B[1][k]);
      fn(ModeView{g.wavenumber(i1), g.wavenumber(i2), g.xi_squared(i1, i2), s.rho[k],
                  s.u[0][k], s.u[1][k], extra});
    }
}

void check_eta(const Grid& g, double eta) {
  if (!(eta >= 0.0)) throw ConfigError("params.eta", "must be >= 0");
  const double cap = eta_max(g);
  if (eta > cap)
    throw ConfigError("params.eta", "exceeds the coercivity threshold " + std::to_string(cap));
}

// visc = 1/2 for Oldroyd, 1 for Hall-MHD; extra_grad: the third field enters
// D undifferentiated (tau) or through its gradient (B).
template <class State>
EnergyPair energies(const State& s, int sigma, double eta, double gamma, double visc,
                    bool extra_grad) {
  if (sigma != 0 && sigma != 1) throw RangeError("sigma must be 0 or 1");
  check_eta(s.grid(), eta);
  double e = 0.0, d = 0.0;
  for_each_mode(s, [&](const ModeView& m) {
    const double lam = sigma == 0 ? 1.0 : m.r2;
    const double w1 = sigma == 0 ? 1.0 + m.r2 : 1.0;
    const double w2 = sigma == 0 ? (1.0 + m.r2) * (1.0 + m.r2) : 1.0 + m.r2;
    const double u2 = std::norm(m.u0) + std::norm(m.u1);
    const Complex irho(0.0, 1.0);
    // <u, grad rho> with grad rho = i xi rho
    const double cross = std::real(m.u0 * std::conj(irho * m.xi1 * m.rho) +
                                   m.u1 * std::conj(irho * m.xi2 * m.rho));
    const double div2 = std::norm(m.xi1 * m.u0 + m.xi2 * m.u1);
    e += lam * w2 * (std::norm(m.rho) + u2 + m.extra2) + 2.0 * eta * lam * w1 * cross;
    d += eta * gamma * lam * w1 * m.r2 * std::norm(m.rho) +
         visc * lam * w2 * (m.r2 * u2 + div2) +
         lam * w2 * (extra_grad ? m.r2 : 1.0) * m.extra2;
  });
  return {e, d};
}

template <class State>
double lowfreq(const State& s, double t, double c2, LowFreqSet which, bool extra) {
  const double r = lowfreq_radius(t, c2, which);
  const double r2max = r * r;
  double sum = 0.0;
  for_each_mode(s, [&](const ModeView& m) {
    if (m.r2 > r2max) return;
    sum += std::norm(m.rho) + std::norm(m.u0) + std::norm(m.u1) + (extra ? m.extra2 : 0.0);
  });
  return sum;
}

template <class State>
double h1_gradient(const State& s) {
  double sum = 0.0;
  for_each_mode(s, [&](const ModeView& m) {
    sum += (1.0 + m.r2) * m.r2 *
           (std::norm(m.rho) + std::norm(m.u0) + std::norm(m.u1) + m.extra2);
  });
  return std::sqrt(sum);
}

TimeSeriesRecord finish(TimeSeriesRecord r, const std::vector<double> blocks[3], int j_min,
                        double t, const DiagnosticsParams& p) {
  r.t = t;
  r.besov_m1 = r.besov_mhalf = 0.0;
  for (int f = 0; f < 3; ++f) {
    r.besov_m1 = std::max(r.besov_m1, besov_from_blocks(blocks[f], -1.0, j_min));
    r.besov_mhalf = std::max(r.besov_mhalf, besov_from_blocks(blocks[f], -0.5, j_min));
  }
  r.s_radius = lowfreq_radius(t, p.c2, LowFreqSet::S);
  return r;
}

using Member = double TimeSeriesRecord::*;
constexpr Member kMembers[kSeriesColumnCount] = {
    &TimeSeriesRecord::t,           &TimeSeriesRecord::l2_rho,
    &TimeSeriesRecord::l2_u,        &TimeSeriesRecord::l2_extra,
    &TimeSeriesRecord::h1_grad,     &TimeSeriesRecord::E0,
    &TimeSeriesRecord::E1,          &TimeSeriesRecord::D0,
    &TimeSeriesRecord::D1,          &TimeSeriesRecord::besov_m1,
    &TimeSeriesRecord::besov_mhalf, &TimeSeriesRecord::lowfreq_S,
    &TimeSeriesRecord::lowfreq_S0,  &TimeSeriesRecord::s_radius,
    &TimeSeriesRecord::n_tracker,   &TimeSeriesRecord::m_tracker};

int column_index(const std::string& name) {
  for (int i = 0; i < kSeriesColumnCount; ++i)
    if (name == kSeriesColumns[i]) return i;
  return -1;
}

}  // namespace

EnergyPair energy_functionals(const OldroydState& s, int sigma, double eta) {
  return energies(s, sigma, eta, s.params.gamma, 0.5, false);
}

EnergyPair energy_functionals(const HallMhdState& s, int sigma, double eta) {
  return energies(s, sigma, eta, s.params.gamma, 1.0, true);
}

double eta_max(const Grid& grid) {
  double best = std::numeric_limits<double>::infinity();
  for (int i1 = 0; i1 < grid.n(); ++i1)
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double r2 = grid.xi_squared(i1, i2);
      if (r2 == 0.0) continue;
      best = std::min(best, (1.0 + r2) / (2.0 * std::sqrt(r2)));
    }
  return best;
}

double lowfreq_radius(double t, double c2, LowFreqSet which) {
  if (!(c2 > 0.0)) throw RangeError("C2 must be positive");
  if (!(t >= 0.0)) throw RangeError("time must be >= 0");
  if (which == LowFreqSet::S) return std::sqrt(c2 / (1.0 + t));
  const double et = std::numbers::e + t;
  // f'/f for f = ln^3(e + t)
  return std::sqrt(2.0 * c2 * 3.0 / (et * std::log(et)));
}

double lowfreq_energy(const OldroydState& s, double t, double c2, LowFreqSet which,
                      bool include_extra) {
  return lowfreq(s, t, c2, which, include_extra);
}

double lowfreq_energy(const HallMhdState& s, double t, double c2, LowFreqSet which,
                      bool include_extra) {
  return lowfreq(s, t, c2, which, include_extra);
}

double besov_norm(const OldroydState& s, double sigma, const FilterBank& bank) {
  return std::max({besov_norm(s.rho, sigma, bank), besov_norm(s.u, sigma, bank),
                   besov_norm(s.tau, sigma, bank)});
}

double besov_norm(const HallMhdState& s, double sigma, const FilterBank& bank) {
  return std::max({besov_norm(s.rho, sigma, bank), besov_norm(s.u, sigma, bank),
                   besov_norm(s.B, sigma, bank)});
}

bool is_column(const std::string& name) {
  return column_index(name) >= 0 || name == "l2_rho_u" || name == "l2_all";
}

double column_value(const TimeSeriesRecord& r, const std::string& name) {
  if (name == "l2_rho_u") return std::hypot(r.l2_rho, r.l2_u);
  if (name == "l2_all") return std::sqrt(r.l2_rho * r.l2_rho + r.l2_u * r.l2_u +
                                         r.l2_extra * r.l2_extra);
  const int i = column_index(name);
  if (i < 0) throw RangeError("unknown column " + name);
  return r.*kMembers[i];
}

TimeSeriesRecord measure(const OldroydState& s, double t, const DiagnosticsParams& p,
                         const FilterBank& bank) {
  TimeSeriesRecord r;
  r.l2_rho = l2_norm(s.rho);
  r.l2_u = sobolev_norm(s.u, 0.0);
  r.l2_extra = sobolev_norm(s.tau, 0.0);
  r.h1_grad = h1_gradient(s);
  const EnergyPair e0 = energy_functionals(s, 0, p.eta), e1 = energy_functionals(s, 1, p.eta);
  r.E0 = e0.E, r.D0 = e0.D, r.E1 = e1.E, r.D1 = e1.D;
  r.lowfreq_S = lowfreq_energy(s, t, p.c2, LowFreqSet::S);
  r.lowfreq_S0 = lowfreq_energy(s, t, p.c2, LowFreqSet::S0);
  const std::vector<double> blocks[3] = {block_norms(s.rho, bank), block_norms(s.u, bank),
                                         block_norms(s.tau, bank)};
  return finish(r, blocks, bank.j_min(), t, p);
}

TimeSeriesRecord measure(const HallMhdState& s, double t, const DiagnosticsParams& p,
                         const FilterBank& bank) {
  TimeSeriesRecord r;
  r.l2_rho = l2_norm(s.rho);
  r.l2_u = sobolev_norm(s.u, 0.0);
  r.l2_extra = sobolev_norm(s.B, 0.0);
  r.h1_grad = h1_gradient(s);
  const EnergyPair e0 = energy_functionals(s, 0, p.eta), e1 = energy_functionals(s, 1, p.eta);
  r.E0 = e0.E, r.D0 = e0.D, r.E1 = e1.E, r.D1 = e1.D;
  r.lowfreq_S = lowfreq_energy(s, t, p.c2, LowFreqSet::S);
  r.lowfreq_S0 = lowfreq_energy(s, t, p.c2, LowFreqSet::S0);
  const std::vector<double> blocks[3] = {block_norms(s.rho, bank), block_norms(s.u, bank),
                                         block_norms(s.B, bank)};
  return finish(r, blocks, bank.j_min(), t, p);
}

Trackers update_trackers(Trackers prev, const TimeSeriesRecord& r) {
  prev.N = std::max(prev.N, std::sqrt(1.0 + r.t) * r.E0);
  prev.M = std::max(prev.M, r.besov_m1);
  return prev;
}

Trackers update_trackers(std::span<const TimeSeriesRecord> history) {
  if (history.empty()) throw RangeError("tracker history is empty");
  Trackers acc;
  for (const TimeSeriesRecord& r : history) acc = update_trackers(acc, r);
  return acc;
}

void fill_trackers(std::vector<TimeSeriesRecord>& history) {
  Trackers acc;
  for (TimeSeriesRecord& r : history) {
    acc = update_trackers(acc, r);
    r.n_tracker = acc.N;
    r.m_tracker = acc.M;
  }
}

FitResult fit_decay(std::span<const std::pair<double, double>> series, double t0,
                    double t1) {
  if (!(t1 > t0)) throw FitError("fit window must have t1 > t0");
  std::vector<double> xs, ys;
  for (const auto& [t, v] : series) {
    if (t < t0 || t > t1) continue;
    if (!(v > 0.0) || !std::isfinite(v))
      throw FitError("log-domain: value " + std::to_string(v) + " at t=" + std::to_string(t));
    xs.push_back(std::log1p(t));
    ys.push_back(std::log(v));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 8) throw FitError("window holds " + std::to_string(n) + " samples, need >= 8");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  FitResult f;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double res = ys[i] - (f.intercept + f.exponent * xs[i]);
    ss += res * res;
  }
  f.residual_rms = std::sqrt(ss / n);
  f.t0 = t0, f.t1 = t1, f.samples = n;
  return f;
}

FitResult fit_decay(std::span<const TimeSeriesRecord> history, const std::string& column,
                    double t0, double t1) {
  std::vector<std::pair<double, double>> series;
  series.reserve(history.size());
  for (const TimeSeriesRecord& r : history) series.emplace_back(r.t, column_value(r, column));
  return fit_decay(series, t0, t1);
}

double energy_inequality_check(std::span<const TimeSeriesRecord> history, int sigma) {
  if (sigma != 0 && sigma != 1) throw RangeError("sigma must be 0 or 1");
  if (history.size() < 2) return 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < history.size(); ++k) {
    const TimeSeriesRecord& a = history[k];
    const TimeSeriesRecord& b = history[k + 1];
    const double ea = sigma == 0 ? a.E0 : a.E1, eb = sigma == 0 ? b.E0 : b.E1;
    const double da = sigma == 0 ? a.D0 : a.D1;
    worst = std::max(worst, (eb - ea) / (b.t - a.t) + da);
  }
  return worst;
}

void write_series_header(std::ostream& os) {
  for (int i = 0; i < kSeriesColumnCount; ++i) os << (i ? "," : "") << kSeriesColumns[i];
  os << '\n';
}

void write_series_row(std::ostream& os, const TimeSeriesRecord& r) {
  char buf[32];
  for (int i = 0; i < kSeriesColumnCount; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", r.*kMembers[i]);
    os << (i ? "," : "") << buf;
  }
  os << '\n';
}

std::vector<TimeSeriesRecord> read_series(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("series: missing header");
  {
    std::ostringstream want;
    write_series_header(want);
    std::string expected = want.str();
    expected.pop_back();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected) throw FormatError("series: unexpected header '" + line + "'");
  }
  std::vector<TimeSeriesRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    TimeSeriesRecord r;
    const char* p = line.c_str();
    for (int i = 0; i < kSeriesColumnCount; ++i) {
      char* end = nullptr;
      r.*kMembers[i] = std::strtod(p, &end);
      if (end == p) throw FormatError("series line " + std::to_string(lineno) + ": bad number");
      p = end;
      if (i + 1 < kSeriesColumnCount) {
        if (*p != ',') throw FormatError("series line " + std::to_string(lineno) + ": too few columns");
        ++p;
      }
    }
    while (*p == '\r' || *p == ' ') ++p;
    if (*p != '\0') throw FormatError("series line " + std::to_string(lineno) + ": trailing data");
    out.push_back(r);
  }
  return out;
}

std::vector<TimeSeriesRecord> read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_series(in);
}

}  // namespace odhl
