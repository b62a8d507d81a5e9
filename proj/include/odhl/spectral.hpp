#pragma once

// Periodic-grid field representation on [0, L)^2.
//
// Coefficients use the unitary L^2 convention: for a field sampled at
// x = (i1, i2) * L / n,
//
//   f_hat(k) = (L / n^2) * sum_x f(x) exp(-i xi(k) . x),   xi(k) = (2 pi / L) k
//
// so that sum_k |f_hat(k)|^2 = (L / n)^2 sum_x |f(x)|^2, the discrete L^2 norm
// of the torus. Storage is the full n x n array in FFT order, row index for
// xi_1 and column index for xi_2.

#include <array>
#include <complex>
#include <cstdlib>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "odhl/errors.hpp"

namespace odhl {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

class Grid {
 public:
  Grid() = default;
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }
  bool empty() const { return n_ == 0; }

  // Lowest nonzero wavenumber 2 pi / L.
  double dk() const { return 2.0 * kPi / length_; }

  // Signed mode number of storage index i, in [-n/2, n/2).
  int mode(int i) const { return i < n_ / 2 ? i : i - n_; }
  double wavenumber(int i) const { return dk() * mode(i); }
  // Wavenumber used by odd-order derivatives; zero on the Nyquist index so
  // real data stays real.
  double derivative_wavenumber(int i) const {
    return i == n_ / 2 ? 0.0 : wavenumber(i);
  }

  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * n_ + i2;
  }
  // Storage index of the mode -k.
  std::size_t mirror(int i1, int i2) const {
    return index((n_ - i1) % n_, (n_ - i2) % n_);
  }

  double xi_squared(int i1, int i2) const {
    const double a = wavenumber(i1), b = wavenumber(i2);
    return a * a + b * b;
  }

  // 2/3 rule: a mode survives dealiasing iff 3|k| < n in both directions.
  bool retained(int i) const { return 3 * std::abs(mode(i)) < n_; }
  bool retained(int i1, int i2) const { return retained(i1) && retained(i2); }
  // Largest retained signed mode number.
  int retained_max() const { return (n_ - 1) / 3; }

  // Largest |xi| represented on the grid (the corner mode).
  double max_wavenumber() const;

  bool operator==(const Grid& other) const = default;

 private:
  int n_ = 0;
  double length_ = 1.0;
};

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid& grid)
      : grid_(grid), coeffs_(grid.size()) {}

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }

  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  Complex& at(int i1, int i2) { return coeffs_[grid_.index(i1, i2)]; }
  const Complex& at(int i1, int i2) const {
    return coeffs_[grid_.index(i1, i2)];
  }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(Complex s, SpectralField a) { return a *= s; }

  // Largest |f(-k) - conj f(k)| relative to the largest coefficient.
  double hermitian_defect() const;

  friend bool operator==(const SpectralField&, const SpectralField&) = default;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

using VectorField = std::array<SpectralField, 2>;

// Symmetric 2x2 tensor; the (2,1) entry is the (1,2) entry by construction.
struct SymTensorField {
  SpectralField xx, xy, yy;

  const SpectralField& operator()(int j, int k) const {
    if (j == 0 && k == 0) return xx;
    if (j == 1 && k == 1) return yy;
    return xy;
  }
  SpectralField& operator()(int j, int k) {
    return const_cast<SpectralField&>(std::as_const(*this)(j, k));
  }
  friend bool operator==(const SymTensorField&,
                         const SymTensorField&) = default;
};

VectorField make_vector(const Grid& grid);
SymTensorField make_tensor(const Grid& grid);

// Real samples on the n x n physical grid, row-major in (x1, x2).
class RealField {
 public:
  RealField() = default;
  explicit RealField(const Grid& grid) : grid_(grid), values_(grid.size()) {}
  RealField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(int i1, int i2) { return values_[grid_.index(i1, i2)]; }
  double at(int i1, int i2) const { return values_[grid_.index(i1, i2)]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

// Real-data FFT workspace for one grid. Not thread-safe; one per worker.
class Transform {
 public:
  explicit Transform(const Grid& grid);
  ~Transform();
  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;
  Transform(Transform&&) noexcept;
  Transform& operator=(Transform&&) noexcept;

  const Grid& grid() const { return grid_; }
  int half_columns() const { return grid_.n() / 2 + 1; }

  // samples -> coefficients; the full array is filled with exact Hermitian
  // symmetry.
  void forward(std::span<const double> samples, SpectralField& out);
  // Same, then zeroes every mode removed by the 2/3 rule.
  void forward_dealiased(std::span<const double> samples, SpectralField& out);

  // coefficients -> samples. Assumes f represents real data.
  void inverse(const SpectralField& f, std::span<double> samples);

  // Inverse of mult(i1, i2) * f_hat, evaluated without forming the product
  // spectrum. Only the stored half spectrum is visited.
  template <class Multiplier>
  void inverse(const SpectralField& f, Multiplier&& mult,
               std::span<double> samples) {
    check_spectral(f);
    const int n = grid_.n(), h = half_columns();
    std::span<Complex> stage = staging();
    for (int i1 = 0; i1 < n; ++i1) {
      const Complex* row = &f[grid_.index(i1, 0)];
      Complex* dst = &stage[static_cast<std::size_t>(i1) * h];
      for (int i2 = 0; i2 < h; ++i2) dst[i2] = mult(i1, i2) * row[i2];
    }
    execute_inverse(samples);
  }

  // Inverse of the spectrum coeff(i1, i2), generated mode by mode over the
  // stored half.
  template <class Generator>
  void inverse_generated(Generator&& coeff, std::span<double> samples) {
    const int n = grid_.n(), h = half_columns();
    std::span<Complex> stage = staging();
    for (int i1 = 0; i1 < n; ++i1) {
      Complex* dst = &stage[static_cast<std::size_t>(i1) * h];
      for (int i2 = 0; i2 < h; ++i2) dst[i2] = coeff(i1, i2);
    }
    execute_inverse(samples);
  }

 private:
  std::span<Complex> staging();
  void execute_inverse(std::span<double> samples);
  void check_spectral(const SpectralField& f) const;

  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
};

// Per-thread transform workspace for the given grid.
Transform& workspace(const Grid& grid);

SpectralField transform(const RealField& field);
RealField inverse_transform(const SpectralField& field);

// Lambda^s f = F^{-1}(|xi|^s f_hat).
SpectralField fractional_derivative(const SpectralField& f, double s);

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField laplacian(const SpectralField& f);
// Planar curl of a vector: d1 v2 - d2 v1.
SpectralField curl2d(const VectorField& v);
// Curl of a scalar out of the plane: (d2 w, -d1 w).
VectorField perp_curl2d(const SpectralField& w);

SpectralField dealias(const SpectralField& f);
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

double l2_norm(const SpectralField& f);
// ||f||_{H^s}^2 = sum (1 + |xi|^2)^s |f_hat|^2.
double sobolev_norm(const SpectralField& f, double s);
double sobolev_norm(const VectorField& v, double s);
// Frobenius: the off-diagonal entry counts twice.
double sobolev_norm(const SymTensorField& t, double s);

}  // namespace odhl
