#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "odhl/hallmhd.hpp"
#include "odhl/oldroyd.hpp"
#include "odhl/spectral.hpp"
#include "oracle/oracle.hpp"

namespace testing_support {

inline oracle::Box box(const odhl::Grid& g) { return {g.n(), g.length()}; }

inline oracle::Spectrum to_spectrum(const odhl::SpectralField& f) {
  return {f.coeffs().begin(), f.coeffs().end()};
}

inline odhl::SpectralField to_field(const odhl::Grid& g, const oracle::Spectrum& s) {
  odhl::SpectralField f(g);
  std::copy(s.begin(), s.end(), f.coeffs().begin());
  return f;
}

inline odhl::SpectralField random_field(const odhl::Grid& g, std::uint64_t seed,
                                        double amplitude = 1.0) {
  return to_field(g, oracle::random_field(box(g), seed, amplitude));
}

inline std::vector<double> random_samples(const odhl::Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(g.size());
  for (double& x : v) x = normal(rng);
  return v;
}

// Unit-amplitude real cosine pair at signed modes (m1, m2): f_hat = 1/2 at
// +-k, so the L^2 norm is 1/sqrt(2).
inline odhl::SpectralField cosine_mode(const odhl::Grid& g, int m1, int m2, double amp = 1.0) {
  odhl::SpectralField f(g);
  const int n = g.n();
  const int i1 = (m1 + n) % n, i2 = (m2 + n) % n;
  f.at(i1, i2) += 0.5 * amp;
  f.at((n - i1) % n, (n - i2) % n) += 0.5 * amp;
  return f;
}

inline double max_abs(const odhl::SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

inline double diff_norm(const odhl::SpectralField& a, const odhl::SpectralField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

inline double rel_diff(const odhl::SpectralField& a, const odhl::SpectralField& b) {
  const double scale = odhl::l2_norm(b);
  return diff_norm(a, b) / (scale > 0.0 ? scale : 1.0);
}

inline std::vector<oracle::Spectrum> spectra(const odhl::OldroydState& s) {
  return {to_spectrum(s.rho),    to_spectrum(s.u[0]),   to_spectrum(s.u[1]),
          to_spectrum(s.tau.xx), to_spectrum(s.tau.xy), to_spectrum(s.tau.yy)};
}
inline std::vector<oracle::Spectrum> spectra(const odhl::OldroydRhs& r) {
  return {to_spectrum(r.F),    to_spectrum(r.G[0]),  to_spectrum(r.G[1]),
          to_spectrum(r.H.xx), to_spectrum(r.H.xy), to_spectrum(r.H.yy)};
}
inline std::vector<oracle::Spectrum> spectra(const odhl::HallMhdState& s) {
  return {to_spectrum(s.rho), to_spectrum(s.u[0]), to_spectrum(s.u[1]), to_spectrum(s.B[0]),
          to_spectrum(s.B[1])};
}
inline std::vector<oracle::Spectrum> spectra(const odhl::HallMhdRhs& r) {
  return {to_spectrum(r.F1),    to_spectrum(r.G1[0]), to_spectrum(r.G1[1]),
          to_spectrum(r.H1[0]), to_spectrum(r.H1[1])};
}

inline odhl::OldroydState random_oldroyd(const odhl::Grid& g, std::uint64_t seed, double amp,
                                         odhl::OldroydParams p = {}) {
  odhl::OldroydState s(g, p);
  s.rho = random_field(g, seed, amp);
  s.u = {random_field(g, seed + 1, amp), random_field(g, seed + 2, amp)};
  s.tau = {random_field(g, seed + 3, amp), random_field(g, seed + 4, amp),
           random_field(g, seed + 5, amp)};
  return s;
}

inline odhl::HallMhdState random_hallmhd(const odhl::Grid& g, std::uint64_t seed, double amp,
                                         odhl::HallMhdParams p = {}) {
  odhl::HallMhdState s(g, p);
  s.rho = random_field(g, seed, amp);
  s.u = {random_field(g, seed + 1, amp), random_field(g, seed + 2, amp)};
  s.B = odhl::project_divfree({random_field(g, seed + 3, amp), random_field(g, seed + 4, amp)});
  return s;
}

// Fresh directory under the system temp path, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("odhl_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string str(const std::string& leaf = "") const {
    return leaf.empty() ? path_.string() : (path_ / leaf).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace testing_support
