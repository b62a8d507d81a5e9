#pragma once

// Exponential time differencing for the per-mode linear systems
//
//   d/dt a(xi) = A(xi) a(xi) + N(a)(xi)
//
// with the two-stage scheme (ETD2RK, Cox and Matthews), h = dt, E = exp(hA),
// P1 = h phi1(hA), P2 = h phi2(hA):
//
//   c | tableau
//   0 |
//   1 | phi1
//     | phi1 - phi2    phi2
//
//   a*  = E a + P1 N(a)
//   a+  = a* + P2 (N(a*) - N(a))
//
// phi1(z) = (e^z - 1) / z, phi2(z) = (e^z - 1 - z) / z^2. With N = 0 a step is
// exactly E a.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "odhl/errors.hpp"
#include "odhl/spectral.hpp"

namespace odhl {

struct PhiMatrices {
  Eigen::MatrixXcd e, phi1, phi2;
  bool fallback = false;  // true when the Pade route was taken
};

// exp, phi1, phi2 of z. Eigendecomposition first; if the eigenvector matrix
// has condition number above max_condition, scaling-and-squaring Pade on the
// augmented block [[z, I, 0], [0, 0, I], [0, 0, 0]].
PhiMatrices phi_functions(const Eigen::MatrixXcd& z, double max_condition = 1e12);

// Scaling-and-squaring Pade exponential, used as the reference semigroup.
Eigen::MatrixXcd expm_pade(const Eigen::MatrixXcd& z);

Complex phi1(Complex z);
Complex phi2(Complex z);

// Canonical half of the retained modes: signed k2 > 0, or k2 = 0 with
// k1 >= 0. Every other retained mode is the mirror
// of exactly one canonical mode.
struct CanonicalMode {
  int i1, i2;
  std::uint32_t index, mirror;
};
std::vector<CanonicalMode> canonical_modes(const Grid& grid);

template <class Model>
class PropagatorTable {
 public:
  static constexpr int kDim = Model::kDim;
  using Mat = Eigen::Matrix<Complex, kDim, kDim>;

  struct Entry {
    CanonicalMode mode;
    Mat e, p1, p2;
  };

  PropagatorTable(const Grid& grid, double dt, const typename Model::Params& params)
      : grid_(grid), dt_(dt), params_(params) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw RangeError("dt must be finite and >= 0");
    for (const CanonicalMode& m : canonical_modes(grid)) {
      Entry e{m, Mat(), Mat(), Mat()};
      build(Model::symbol(grid.wavenumber(m.i1), grid.wavenumber(m.i2), params), e);
      entries_.push_back(std::move(e));
    }
  }

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }
  const typename Model::Params& params() const { return params_; }
  const std::vector<Entry>& entries() const { return entries_; }
  int fallback_count() const { return fallbacks_; }

  // exp(dt A(xi)) at any retained storage index; mirror modes are conjugates.
  Mat propagator(int i1, int i2) const { return lookup(i1, i2, &Entry::e); }
  Mat phi1(int i1, int i2) const { return lookup(i1, i2, &Entry::p1); }
  Mat phi2(int i1, int i2) const { return lookup(i1, i2, &Entry::p2); }

 private:
  void build(const Mat& a, Entry& out) {
    const Mat z = dt_ * a;
    // Rows with no coupling in either direction get exact scalar formulas.
    std::vector<int> coupled;
    for (int r = 0; r < kDim; ++r) {
      bool alone = true;
      for (int c = 0; c < kDim; ++c)
        if (c != r && (z(r, c) != Complex(0) || z(c, r) != Complex(0))) alone = false;
      if (!alone) coupled.push_back(r);
    }
    out.e.setZero();
    out.p1.setZero();
    out.p2.setZero();
    if (!coupled.empty()) {
      const int m = static_cast<int>(coupled.size());
      Eigen::MatrixXcd sub(m, m);
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) sub(r, c) = z(coupled[r], coupled[c]);
      const PhiMatrices f = phi_functions(sub);
      if (f.fallback) ++fallbacks_;
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          out.e(coupled[r], coupled[c]) = f.e(r, c);
          out.p1(coupled[r], coupled[c]) = dt_ * f.phi1(r, c);
          out.p2(coupled[r], coupled[c]) = dt_ * f.phi2(r, c);
        }
    }
    for (int r = 0; r < kDim; ++r) {
      if (std::find(coupled.begin(), coupled.end(), r) != coupled.end()) continue;
      const Complex d = z(r, r);
      out.e(r, r) = d.imag() == 0.0 ? Complex(std::exp(d.real())) : std::exp(d);
      out.p1(r, r) = dt_ * odhl::phi1(d);
      out.p2(r, r) = dt_ * odhl::phi2(d);
    }
  }

  Mat lookup(int i1, int i2, Mat Entry::*which) const {
    if (!grid_.retained(i1, i2)) return Mat::Zero();
    const std::uint32_t k = static_cast<std::uint32_t>(grid_.index(i1, i2));
    for (const Entry& e : entries_) {
      if (e.mode.index == k) return e.*which;
      if (e.mode.mirror == k) return (e.*which).conjugate();
    }
    throw RangeError("mode missing from propagator table");
  }

  Grid grid_;
  double dt_;
  typename Model::Params params_;
  std::vector<Entry> entries_;
  int fallbacks_ = 0;
};

namespace detail {

template <int D>
using Vec = Eigen::Matrix<Complex, D, 1>;

template <class Model, class Fields>
Vec<Model::kDim> gather(const Fields& f, std::size_t k) {
  Vec<Model::kDim> v;
  for (int c = 0; c < Model::kDim; ++c) v(c) = (*f[c])[k];
  return v;
}

template <class Model>
void scatter(std::array<SpectralField*, Model::kDim>& f, const CanonicalMode& m,
             const Vec<Model::kDim>& v) {
  for (int c = 0; c < Model::kDim; ++c) {
    (*f[c])[m.index] = v(c);
    (*f[c])[m.mirror] = std::conj(v(c));
  }
  if (m.index == m.mirror)
    for (int c = 0; c < Model::kDim; ++c) (*f[c])[m.index] = v(c).real();
}

// Modes outside the 2/3 set are never propagated; they are held at zero.
template <int D>
void zero_unretained(const Grid& g, std::array<SpectralField*, D>& f) {
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2)
      if (!g.retained(i1, i2))
        for (SpectralField* c : f) (*c)[g.index(i1, i2)] = 0.0;
}

template <class Model>
void check_finite(const typename Model::State& s, double t) {
  for (const SpectralField* f : Model::fields(s))
    for (const Complex& c : f->coeffs())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw BlowUpError(t);
}

}  // namespace detail

// Scratch for one trajectory: the evaluator, two right-hand sides, and the
// intermediate stage.
template <class Model>
class Stepper {
 public:
  using State = typename Model::State;

  Stepper(const Grid& grid, double dt, const typename Model::Params& params,
          bool nonlinear = true)
      : table_(grid, dt, params),
        eval_(grid),
        n0_(grid),
        n1_(grid),
        nonlinear_(nonlinear) {}

  const PropagatorTable<Model>& table() const { return table_; }
  bool nonlinear() const { return nonlinear_; }

  // Advances s from time t to t + dt.
  void advance(State& s, double t) {
    if (!(s.grid() == table_.grid())) throw DimensionError("state grid differs from table grid");
    const auto& entries = table_.entries();
    auto out = Model::fields(s);
    if (!nonlinear_) {
      zero_unretained(out);
      for (const auto& e : entries)
        detail::scatter<Model>(out, e.mode,
                               e.e * detail::gather<Model>(Model::fields(std::as_const(s)),
                                                           e.mode.index));
      detail::check_finite<Model>(s, t + table_.dt());
      return;
    }
    eval_(s, n0_);
    stage_ = s;
    auto st = Model::fields(stage_);
    const auto n0 = Model::fields(std::as_const(n0_));
    zero_unretained(st);
    for (const auto& e : entries) {
      const auto a = detail::gather<Model>(Model::fields(std::as_const(s)), e.mode.index);
      const auto n = detail::gather<Model>(n0, e.mode.index);
      detail::scatter<Model>(st, e.mode, e.e * a + e.p1 * n);
    }
    detail::check_finite<Model>(stage_, t + table_.dt());
    eval_(stage_, n1_);
    const auto n1 = Model::fields(std::as_const(n1_));
    zero_unretained(out);
    for (const auto& e : entries) {
      const auto a = detail::gather<Model>(Model::fields(std::as_const(stage_)), e.mode.index);
      const detail::Vec<Model::kDim> d = detail::gather<Model>(n1, e.mode.index) -
                     detail::gather<Model>(n0, e.mode.index);
      detail::scatter<Model>(out, e.mode, a + e.p2 * d);
    }
    detail::check_finite<Model>(s, t + table_.dt());
  }

 private:
  void zero_unretained(std::array<SpectralField*, Model::kDim>& f) {
    detail::zero_unretained<Model::kDim>(table_.grid(), f);
  }

  PropagatorTable<Model> table_;
  typename Model::Evaluator eval_;
  typename Model::Rhs n0_, n1_;
  State stage_;
  bool nonlinear_;
};

// One step with a caller-supplied right-hand side rhs(state, out).
template <class Model, class RhsFn>
void step(typename Model::State& s, const PropagatorTable<Model>& table, RhsFn&& rhs,
          double t = 0.0) {
  using State = typename Model::State;
  typename Model::Rhs n0(table.grid()), n1(table.grid());
  rhs(std::as_const(s), n0);
  State stage = s;
  auto st = Model::fields(stage);
  detail::zero_unretained<Model::kDim>(table.grid(), st);
  for (const auto& e : table.entries()) {
    const auto a = detail::gather<Model>(Model::fields(std::as_const(s)), e.mode.index);
    const auto n = detail::gather<Model>(Model::fields(std::as_const(n0)), e.mode.index);
    detail::scatter<Model>(st, e.mode, e.e * a + e.p1 * n);
  }
  detail::check_finite<Model>(stage, t + table.dt());
  rhs(std::as_const(stage), n1);
  auto out = Model::fields(s);
  detail::zero_unretained<Model::kDim>(table.grid(), out);
  for (const auto& e : table.entries()) {
    const auto a = detail::gather<Model>(Model::fields(std::as_const(stage)), e.mode.index);
    const detail::Vec<Model::kDim> d = detail::gather<Model>(Model::fields(std::as_const(n1)), e.mode.index) -
                   detail::gather<Model>(Model::fields(std::as_const(n0)), e.mode.index);
    detail::scatter<Model>(out, e.mode, a + e.p2 * d);
  }
  detail::check_finite<Model>(s, t + table.dt());
}

}  // namespace odhl
