#include "odhl/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace odhl {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw DimensionError("fields live on different grids");
}

template <class Fn>
SpectralField map_modes(const SpectralField& f, Fn&& fn) {
  const Grid& g = f.grid();
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      out[k] = fn(i1, i2, f[k]);
    }
  return out;
}

}  // namespace

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n <= 0 || n % 2 != 0)
    throw DimensionError("grid size must be a positive even integer");
  if (!(length > 0.0) || !std::isfinite(length))
    throw RangeError("box length must be positive");
}

double Grid::max_wavenumber() const {
  const double k = dk() * (n_ / 2);
  return std::sqrt(2.0) * k;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double SpectralField::hermitian_defect() const {
  double defect = 0.0, scale = 0.0;
  for (int i1 = 0; i1 < grid_.n(); ++i1)
    for (int i2 = 0; i2 < grid_.n(); ++i2) {
      const Complex a = at(i1, i2);
      const Complex b = coeffs_[grid_.mirror(i1, i2)];
      defect = std::max(defect, std::abs(a - std::conj(b)));
      scale = std::max(scale, std::abs(a));
    }
  return scale > 0.0 ? defect / scale : 0.0;
}

VectorField make_vector(const Grid& grid) {
  return {SpectralField(grid), SpectralField(grid)};
}

SymTensorField make_tensor(const Grid& grid) {
  return {SpectralField(grid), SpectralField(grid), SpectralField(grid)};
}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw DimensionError("sample count does not match the grid");
}

// ---------------------------------------------------------------------------

struct Transform::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  double* real = nullptr;
  fftw_complex* spec = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(spec);
  }
};

Transform::Transform(const Grid& grid) : grid_(grid) {
  if (grid.empty()) throw DimensionError("transform on an empty grid");
  const int n = grid.n();
  plans_ = std::make_unique<Plans>();
  const std::size_t half = static_cast<std::size_t>(n) * (n / 2 + 1);
  plans_->real = fftw_alloc_real(grid.size());
  plans_->spec = fftw_alloc_complex(half);
  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c_2d(n, n, plans_->real, plans_->spec,
                                     FFTW_ESTIMATE);
  plans_->c2r = fftw_plan_dft_c2r_2d(n, n, plans_->spec, plans_->real,
                                     FFTW_ESTIMATE);
}

Transform::~Transform() = default;
Transform::Transform(Transform&&) noexcept = default;
Transform& Transform::operator=(Transform&&) noexcept = default;

std::span<Complex> Transform::staging() {
  const std::size_t half =
      static_cast<std::size_t>(grid_.n()) * (grid_.n() / 2 + 1);
  return {reinterpret_cast<Complex*>(plans_->spec), half};
}

void Transform::check_spectral(const SpectralField& f) const {
  if (f.size() != grid_.size() || !(f.grid() == grid_))
    throw DimensionError("spectral field does not match transform grid");
}

void Transform::execute_inverse(std::span<double> samples) {
  if (samples.size() != grid_.size())
    throw DimensionError("sample buffer does not match transform grid");
  fftw_execute(plans_->c2r);
  const double scale = 1.0 / grid_.length();
  const double* src = plans_->real;
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = src[i] * scale;
}

void Transform::inverse(const SpectralField& f, std::span<double> samples) {
  inverse(f, [](int, int) { return 1.0; }, samples);
}

void Transform::forward(std::span<const double> samples, SpectralField& out) {
  if (samples.size() != grid_.size())
    throw DimensionError("sample count does not match transform grid");
  if (!(out.grid() == grid_)) out = SpectralField(grid_);
  std::copy(samples.begin(), samples.end(), plans_->real);
  fftw_execute(plans_->r2c);

  const int n = grid_.n(), h = half_columns();
  const double scale = grid_.length() / (static_cast<double>(n) * n);
  const Complex* src = reinterpret_cast<const Complex*>(plans_->spec);
  for (int i1 = 0; i1 < n; ++i1) {
    const Complex* row = src + static_cast<std::size_t>(i1) * h;
    for (int i2 = 0; i2 < h; ++i2) out.at(i1, i2) = scale * row[i2];
  }
  // Columns 0 and n/2 are their own mirrors: make them exactly Hermitian.
  for (int c : {0, n / 2}) {
    for (int i1 = 1; i1 < n / 2; ++i1)
      out.at(n - i1, c) = std::conj(out.at(i1, c));
    for (int i1 : {0, n / 2}) out.at(i1, c) = out.at(i1, c).real();
  }
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = h; i2 < n; ++i2)
      out.at(i1, i2) = std::conj(out[grid_.mirror(i1, i2)]);
}

void Transform::forward_dealiased(std::span<const double> samples,
                                  SpectralField& out) {
  forward(samples, out);
  const int n = grid_.n();
  for (int i1 = 0; i1 < n; ++i1) {
    const bool keep_row = grid_.retained(i1);
    for (int i2 = 0; i2 < n; ++i2)
      if (!keep_row || !grid_.retained(i2)) out.at(i1, i2) = 0.0;
  }
}

Transform& workspace(const Grid& grid) {
  thread_local std::map<std::pair<int, double>, Transform> cache;
  const auto key = std::make_pair(grid.n(), grid.length());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, Transform(grid)).first;
  return it->second;
}

SpectralField transform(const RealField& field) {
  SpectralField out(field.grid());
  workspace(field.grid()).forward(field.values(), out);
  return out;
}

RealField inverse_transform(const SpectralField& field) {
  RealField out(field.grid());
  workspace(field.grid()).inverse(field, out.values());
  return out;
}

// ---------------------------------------------------------------------------

SpectralField fractional_derivative(const SpectralField& f, double s) {
  if (s == 0.0) return f;
  if (s < 0.0 && f[0] != Complex(0.0))
    throw MeanModeError("negative-order derivative of a field with nonzero mean");
  const Grid& g = f.grid();
  return map_modes(f, [&](int i1, int i2, Complex c) {
    if (i1 == 0 && i2 == 0) return Complex(0.0);
    return std::pow(std::sqrt(g.xi_squared(i1, i2)), s) * c;
  });
}

VectorField gradient(const SpectralField& f) {
  const Grid& g = f.grid();
  const Complex i(0.0, 1.0);
  return {map_modes(f, [&](int i1, int, Complex c) {
            return i * g.derivative_wavenumber(i1) * c;
          }),
          map_modes(f, [&](int, int i2, Complex c) {
            return i * g.derivative_wavenumber(i2) * c;
          })};
}

SpectralField divergence(const VectorField& v) {
  require_same_grid(v[0].grid(), v[1].grid());
  const Grid& g = v[0].grid();
  const Complex i(0.0, 1.0);
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      out[k] = i * (g.derivative_wavenumber(i1) * v[0][k] +
                    g.derivative_wavenumber(i2) * v[1][k]);
    }
  return out;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  return map_modes(f, [&](int i1, int i2, Complex c) {
    return -g.xi_squared(i1, i2) * c;
  });
}

SpectralField curl2d(const VectorField& v) {
  require_same_grid(v[0].grid(), v[1].grid());
  const Grid& g = v[0].grid();
  const Complex i(0.0, 1.0);
  SpectralField out(g);
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const std::size_t k = g.index(i1, i2);
      out[k] = i * (g.derivative_wavenumber(i1) * v[1][k] -
                    g.derivative_wavenumber(i2) * v[0][k]);
    }
  return out;
}

VectorField perp_curl2d(const SpectralField& w) {
  const Grid& g = w.grid();
  const Complex i(0.0, 1.0);
  return {map_modes(w, [&](int, int i2, Complex c) {
            return i * g.derivative_wavenumber(i2) * c;
          }),
          map_modes(w, [&](int i1, int, Complex c) {
            return -i * g.derivative_wavenumber(i1) * c;
          })};
}

SpectralField dealias(const SpectralField& f) {
  const Grid& g = f.grid();
  return map_modes(f, [&](int i1, int i2, Complex c) {
    return g.retained(i1, i2) ? c : Complex(0.0);
  });
}

SpectralField dealiased_product(const SpectralField& f,
                                const SpectralField& g) {
  require_same_grid(f.grid(), g.grid());
  const Grid& grid = f.grid();
  Transform& tr = workspace(grid);
  std::vector<double> a(grid.size()), b(grid.size());
  auto mask = [&](int i1, int i2) {
    return grid.retained(i1, i2) ? 1.0 : 0.0;
  };
  tr.inverse(f, mask, a);
  tr.inverse(g, mask, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  SpectralField out(grid);
  tr.forward_dealiased(a, out);
  return out;
}

double l2_norm(const SpectralField& f) { return sobolev_norm(f, 0.0); }

double sobolev_norm(const SpectralField& f, double s) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double w = s == 0.0 ? 1.0 : std::pow(1.0 + g.xi_squared(i1, i2), s);
      sum += w * std::norm(f.at(i1, i2));
    }
  return std::sqrt(sum);
}

double sobolev_norm(const VectorField& v, double s) {
  return std::hypot(sobolev_norm(v[0], s), sobolev_norm(v[1], s));
}

double sobolev_norm(const SymTensorField& t, double s) {
  const double a = sobolev_norm(t.xx, s), b = sobolev_norm(t.xy, s),
               c = sobolev_norm(t.yy, s);
  return std::sqrt(a * a + 2.0 * b * b + c * c);
}

}  // namespace odhl
