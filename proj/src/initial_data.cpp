#include "odhl/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "odhl/integrator.hpp"

namespace odhl {

namespace {

void validate(const IcSpec& spec, const Grid& grid) {
  if (!(spec.amplitude >= 0.0) || !std::isfinite(spec.amplitude))
    throw RangeError("ic.amplitude must be finite and >= 0");
  if (!(spec.cutoff > 0.0)) throw RangeError("ic.cutoff must be positive");
  if (spec.cutoff > grid.max_wavenumber())
    throw RangeError("ic.cutoff exceeds the largest grid wavenumber");
  if (!(spec.tail_exponent >= 0.0)) throw RangeError("ic.tail_exponent must be >= 0");
}

class PhaseSource {
 public:
  explicit PhaseSource(std::uint64_t seed) : rng_(seed) {}
  // 53-bit uniform in [0, 2 pi); independent of the library's distributions.
  double next() { return 2.0 * kPi * static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

// Random-phase field with the configured modulus profile, not yet normalized.
SpectralField profile_field(const Grid& grid, const std::vector<CanonicalMode>& modes,
                            const IcSpec& spec, PhaseSource& phases) {
  SpectralField f(grid);
  for (const CanonicalMode& m : modes) {
    const double phase = phases.next();
    if (m.index == m.mirror) continue;  // the mean mode
    const double r = std::sqrt(grid.xi_squared(m.i1, m.i2));
    const double mod = r <= spec.cutoff ? 1.0 : std::pow(r / spec.cutoff, -spec.tail_exponent);
    const Complex c = std::polar(mod, phase);
    f[m.index] = c;
    f[m.mirror] = std::conj(c);
  }
  return f;
}

double squared_sum(const SpectralField& f) {
  double s = 0.0;
  for (const Complex& c : f.coeffs()) s += std::norm(c);
  return s;
}

// Scales fields jointly so the sum of their mean squares is their count, then
// by the amplitude.
void normalize(std::initializer_list<SpectralField*> fs, double length, double amplitude) {
  double total = 0.0;
  for (SpectralField* f : fs) total += squared_sum(*f);
  if (total == 0.0) return;
  const double unit = length * std::sqrt(static_cast<double>(fs.size()) / total);
  for (SpectralField* f : fs) {
    *f *= unit;
    *f *= amplitude;
  }
}

void check_vacuum(const SpectralField& rho, const IcSpec& spec, double floor) {
  const RealField x = inverse_transform(rho);
  const double lo = *std::min_element(x.values().begin(), x.values().end());
  if (1.0 + lo < floor)
    throw AmplitudeError(1.0 + lo, floor, spec.amplitude * (1.0 - floor) / -lo);
}

}  // namespace

OldroydState generate_oldroyd(const IcSpec& spec, const Grid& grid,
                              const OldroydParams& params) {
  validate(spec, grid);
  const auto modes = canonical_modes(grid);
  PhaseSource phases(spec.seed);
  OldroydState s(grid, params);
  SpectralField* fields[] = {&s.rho, &s.u[0], &s.u[1], &s.tau.xx, &s.tau.xy, &s.tau.yy};
  const bool on[] = {spec.rho, spec.u, spec.u, spec.extra, spec.extra, spec.extra};
  for (int c = 0; c < 6; ++c) {
    SpectralField f = profile_field(grid, modes, spec, phases);
    if (!on[c]) continue;
    *fields[c] = std::move(f);
    normalize({fields[c]}, grid.length(), spec.amplitude);
  }
  check_vacuum(s.rho, spec, params.density_floor);
  return s;
}

HallMhdState generate_hallmhd(const IcSpec& spec, const Grid& grid,
                              const HallMhdParams& params) {
  validate(spec, grid);
  const auto modes = canonical_modes(grid);
  PhaseSource phases(spec.seed);
  HallMhdState s(grid, params);
  SpectralField* scalars[] = {&s.rho, &s.u[0], &s.u[1]};
  const bool on[] = {spec.rho, spec.u, spec.u};
  for (int c = 0; c < 3; ++c) {
    SpectralField f = profile_field(grid, modes, spec, phases);
    if (!on[c]) continue;
    *scalars[c] = std::move(f);
    normalize({scalars[c]}, grid.length(), spec.amplitude);
  }
  VectorField b = {profile_field(grid, modes, spec, phases),
                   profile_field(grid, modes, spec, phases)};
  if (spec.extra) {
    s.B = project_divfree(b);
    normalize({&s.B[0], &s.B[1]}, grid.length(), spec.amplitude);
  }
  check_vacuum(s.rho, spec, params.density_floor);
  return s;
}

}  // namespace odhl
