#pragma once

// Functionals tracked along trajectories. Sobolev weights follow
// ||f||_{H^s}^2 = sum (1 + |xi|^2)^s |f_hat|^2 and tau norms are Frobenius.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odhl/hallmhd.hpp"
#include "odhl/littlewood_paley.hpp"
#include "odhl/oldroyd.hpp"

namespace odhl {

struct EnergyPair {
  double E = 0.0;
  double D = 0.0;
};

// E_sigma = ||Lambda^sigma (rho, u, tau)||^2_{H^{2-sigma}}
//           + 2 eta <Lambda^sigma u, grad Lambda^sigma rho>_{H^{1-sigma}}
// D_sigma = eta gamma ||grad Lambda^sigma rho||^2_{H^{1-sigma}}
//           + (||grad Lambda^sigma u||^2 + ||div Lambda^sigma u||^2) / 2
//           + ||Lambda^sigma tau||^2, the last three in H^{2-sigma}.
// The Hall-MHD pair drops the 1/2 factors and replaces the tau term by
// ||grad Lambda^sigma B||^2_{H^{2-sigma}}.
// Throws ConfigError when eta exceeds eta_max(grid).
EnergyPair energy_functionals(const OldroydState& s, int sigma, double eta);
EnergyPair energy_functionals(const HallMhdState& s, int sigma, double eta);

// Largest eta for which |2 eta <.,.>| <= E_sigma's main term / 2 holds at
// every nonzero grid frequency: min (1 + |xi|^2) / (2 |xi|).
double eta_max(const Grid& grid);

enum class LowFreqSet { S, S0 };

// Radius of S(t) = {|xi|^2 <= C2 / (1 + t)} or of
// S0(t) = {|xi|^2 <= 2 C2 f'(t) / f(t)}, f = ln^3(e + t).
double lowfreq_radius(double t, double c2, LowFreqSet which);

// sum of |rho|^2 + |u|^2 (+ |tau|^2 or |B|^2 when include_extra) over the
// grid modes inside the ball.
double lowfreq_energy(const OldroydState& s, double t, double c2, LowFreqSet which,
                      bool include_extra = false);
double lowfreq_energy(const HallMhdState& s, double t, double c2, LowFreqSet which,
                      bool include_extra = true);

// Besov norm of a state: max over the physical fields rho, u, tau (or B).
double besov_norm(const OldroydState& s, double sigma, const FilterBank& bank);
double besov_norm(const HallMhdState& s, double sigma, const FilterBank& bank);

struct TimeSeriesRecord {
  double t = 0.0;
  double l2_rho = 0.0, l2_u = 0.0, l2_extra = 0.0;
  double h1_grad = 0.0;
  double E0 = 0.0, E1 = 0.0, D0 = 0.0, D1 = 0.0;
  double besov_m1 = 0.0, besov_mhalf = 0.0;
  double lowfreq_S = 0.0, lowfreq_S0 = 0.0, s_radius = 0.0;
  double n_tracker = 0.0, m_tracker = 0.0;

  friend bool operator==(const TimeSeriesRecord&, const TimeSeriesRecord&) = default;
};

inline constexpr const char* kSeriesColumns[] = {
    "t",        "l2_rho",      "l2_u",      "l2_extra",   "h1_grad",  "E0",
    "E1",       "D0",          "D1",        "besov_m1",   "besov_mhalf",
    "lowfreq_S", "lowfreq_S0", "s_radius",  "n_tracker",  "m_tracker"};
inline constexpr int kSeriesColumnCount = 16;

// Column by name; "l2_rho_u" and "l2_all" are the combined L^2 norms.
double column_value(const TimeSeriesRecord& r, const std::string& name);
bool is_column(const std::string& name);

struct DiagnosticsParams {
  double eta = 0.01;
  double c2 = 1.0;
};

// One record with trackers left at zero.
TimeSeriesRecord measure(const OldroydState& s, double t, const DiagnosticsParams& p,
                         const FilterBank& bank);
TimeSeriesRecord measure(const HallMhdState& s, double t, const DiagnosticsParams& p,
                         const FilterBank& bank);

struct Trackers {
  double N = 0.0;
  double M = 0.0;
};

// N(t) = sup_{s <= t} (1 + s)^{1/2} E0(s); M(t) = sup_{s <= t} besov_m1(s),
// the running sup standing in for the continuum sum.
Trackers update_trackers(std::span<const TimeSeriesRecord> history);
// Folds one more record in; equals update_trackers over the extended history.
Trackers update_trackers(Trackers prev, const TimeSeriesRecord& r);
// Rewrites n_tracker / m_tracker of every record from scratch.
void fill_trackers(std::vector<TimeSeriesRecord>& history);

struct FitResult {
  double exponent = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double t0 = 0.0, t1 = 0.0;
  int samples = 0;
};

// OLS of log(value) against log(1 + t) over t0 <= t <= t1.
FitResult fit_decay(std::span<const std::pair<double, double>> series, double t0,
                    double t1);
FitResult fit_decay(std::span<const TimeSeriesRecord> history, const std::string& column,
                    double t0, double t1);

// max_k [E(t_{k+1}) - E(t_k)] / (t_{k+1} - t_k) + D(t_k); 0 for fewer than two
// records.
double energy_inequality_check(std::span<const TimeSeriesRecord> history, int sigma);

void write_series_header(std::ostream& os);
void write_series_row(std::ostream& os, const TimeSeriesRecord& r);
std::vector<TimeSeriesRecord> read_series(std::istream& is);
std::vector<TimeSeriesRecord> read_series_file(const std::string& path);

}  // namespace odhl
