#pragma once

// Shared pieces of the pseudo-spectral right-hand sides.

#include <span>
#include <vector>

#include "odhl/spectral.hpp"

namespace odhl::kernels {

// Per-index derivative wavenumbers and 2/3-rule masks of one grid.
class Wavenumbers {
 public:
  explicit Wavenumbers(const Grid& g) : kd_(g.n()), keep_(g.n()), k2_(g.size()) {
    for (int i = 0; i < g.n(); ++i) {
      kd_[i] = g.derivative_wavenumber(i);
      keep_[i] = g.retained(i) ? 1.0 : 0.0;
    }
    n_ = g.n();
    for (int i1 = 0; i1 < n_; ++i1)
      for (int i2 = 0; i2 < n_; ++i2) k2_[g.index(i1, i2)] = g.xi_squared(i1, i2);
  }

  double k(int i) const { return kd_[i]; }
  double m(int i1, int i2) const { return keep_[i1] * keep_[i2]; }
  double k2(int i1, int i2) const {
    return k2_[static_cast<std::size_t>(i1) * n_ + i2];
  }

  auto mask() const {
    return [this](int i1, int i2) { return Complex(m(i1, i2)); };
  }
  // Dealiased d/dx_axis.
  auto derivative(int axis) const {
    return [this, axis](int i1, int i2) {
      return Complex(0.0, m(i1, i2) * (axis == 0 ? kd_[i1] : kd_[i2]));
    };
  }

 private:
  int n_ = 0;
  std::vector<double> kd_, keep_, k2_;
};

// Component j of (Delta + grad div) u at one mode.
inline Complex viscous(const Wavenumbers& wn, int i1, int i2, Complex u0,
                       Complex u1, int j) {
  const double a = wn.k(i1), b = wn.k(i2);
  const Complex dot = a * u0 + b * u1;
  return -wn.k2(i1, i2) * (j == 0 ? u0 : u1) - (j == 0 ? a : b) * dot;
}

// samples -> dealiased samples, through the spectral scratch field.
inline void dealias_samples(Transform& tr, std::span<const double> in,
                            SpectralField& scratch, std::span<double> out) {
  tr.forward_dealiased(in, scratch);
  tr.inverse(scratch, out);
}

// out = -i (xi_1 a + xi_2 b)
inline void negative_divergence(const Wavenumbers& wn, const SpectralField& a,
                                const SpectralField& b, SpectralField& out) {
  const Grid& g = a.grid();
  const Complex I(0.0, 1.0);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      out[k] = -I * (wn.k(i1) * a[k] + wn.k(i2) * b[k]);
    }
}

}  // namespace odhl::kernels
