#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "odhl/initial_data.hpp"
#include "odhl/integrator.hpp"
#include "support.hpp"

using namespace odhl;
using namespace testing_support;

namespace {

template <int D>
using MatD = Eigen::Matrix<Complex, D, D>;

template <int D>
MatD<D> reference_exp(const MatD<D>& z) {
  std::vector<oracle::cd> flat(D * D);
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) flat[r * D + c] = z(r, c);
  const auto e = oracle::expm_quad(flat, D);
  MatD<D> out;
  for (int r = 0; r < D; ++r)
    for (int c = 0; c < D; ++c) out(r, c) = e[r * D + c];
  return out;
}

template <class Model>
double state_distance(const typename Model::State& a, const typename Model::State& b) {
  const auto fa = Model::fields(a), fb = Model::fields(b);
  double s = 0.0;
  for (int c = 0; c < Model::kDim; ++c) s += std::pow(diff_norm(*fa[c], *fb[c]), 2);
  return std::sqrt(s);
}

template <class Model>
typename Model::State advance(typename Model::State s, double dt, double t_end, bool nonlinear) {
  Stepper<Model> st(s.grid(), dt, s.params, nonlinear);
  const long long steps = std::llround(t_end / dt);
  for (long long k = 0; k < steps; ++k) st.advance(s, k * dt);
  return s;
}

}  // namespace

TEST(Phi, ScalarClosedForms) {
  EXPECT_DOUBLE_EQ(phi1(Complex(0.0)).real(), 1.0);
  EXPECT_DOUBLE_EQ(phi2(Complex(0.0)).real(), 0.5);
  const double e = std::exp(-1.0);
  EXPECT_NEAR(std::abs(phi1(Complex(-1.0)) - (1.0 - e)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(phi2(Complex(-1.0)) - e), 0.0, 1e-16);
}

TEST(Phi, ScalarSmallArgumentsFollowTheSeries) {
  for (double r : {1e-3, 1e-6, 1e-9, 1e-12}) {
    const Complex z(-r, 0.7 * r);
    // truncated after z^3; the remainder is below |z|^4
    const double tol = 1e-15 + std::pow(std::abs(z), 4);
    EXPECT_NEAR(std::abs(phi1(z) - (1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0)), 0.0, tol) << r;
    EXPECT_NEAR(std::abs(phi2(z) - (0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0)), 0.0, tol)
        << r;
  }
}

TEST(Phi, DiagonalMatrixMatchesScalars) {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
  z(0, 0) = -2.0;
  z(1, 1) = Complex(-0.5, 3.0);
  z(2, 2) = 0.0;
  const PhiMatrices f = phi_functions(z);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(std::abs(f.e(i, i) - std::exp(z(i, i))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f.phi1(i, i) - phi1(z(i, i))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f.phi2(i, i) - phi2(z(i, i))), 0.0, 1e-14);
  }
}

TEST(Phi, DefectiveMatrixTakesThePadeRoute) {
  Eigen::MatrixXcd z(2, 2);
  z << -1.0, 1.0, 0.0, -1.0;
  const PhiMatrices f = phi_functions(z);
  EXPECT_TRUE(f.fallback);
  const double e = std::exp(-1.0);
  EXPECT_NEAR(std::abs(f.e(0, 0) - e), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.e(0, 1) - e), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(f.e(1, 0)), 0.0, 1e-14);
  // phi1 of a Jordan block: off-diagonal is phi1'(-1) = (e^z z - e^z + 1) / z^2 at z = -1
  EXPECT_NEAR(std::abs(f.phi1(0, 1) - (1.0 - 2.0 * e)), 0.0, 1e-13);
}

TEST(Phi, PadeMatchesQuadPrecisionReference) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    MatD<6> z;
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) z(r, c) = Complex(g(rng), g(rng)) * (0.2 * (trial + 1));
    const Eigen::MatrixXcd pade = expm_pade(z);
    const MatD<6> ref = reference_exp<6>(z);
    EXPECT_LE((pade - ref).norm() / ref.norm(), 1e-12) << trial;
  }
}

TEST(Phi, ModesCoverTheRetainedSetOnce) {
  const Grid g(16, 3.0);
  std::vector<int> seen(g.size(), 0);
  for (const CanonicalMode& m : canonical_modes(g)) {
    ++seen[m.index];
    if (m.mirror != m.index) ++seen[m.mirror];
    EXPECT_EQ(std::size_t{m.mirror}, g.mirror(m.i1, m.i2));
  }
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2)
      EXPECT_EQ(seen[g.index(i1, i2)], g.retained(i1, i2) ? 1 : 0) << i1 << "," << i2;
}

TEST(Propagator, NegativeStepRejected) {
  EXPECT_THROW(PropagatorTable<OldroydModel>(Grid(8, 1.0), -0.1, {}), RangeError);
}

TEST(Propagator, ZeroStepIsIdentity) {
  const PropagatorTable<OldroydModel> t(Grid(16, 20.0), 0.0, {});
  for (const auto& e : t.entries()) {
    EXPECT_EQ(e.e, (MatD<6>::Identity()));
    EXPECT_EQ(e.p1, (MatD<6>::Zero()));
  }
}

TEST(Propagator, ZeroFrequencyClosedForms) {
  const double dt = 0.05;
  const PropagatorTable<OldroydModel> o(Grid(16, 20.0), dt, {});
  MatD<6> want = MatD<6>::Identity();
  for (int i = 3; i < 6; ++i) want(i, i) = std::exp(-dt);
  EXPECT_LE((o.propagator(0, 0) - want).norm(), 1e-16);
  const PropagatorTable<HallMhdModel> h(Grid(16, 20.0), dt, {});
  EXPECT_EQ(h.propagator(0, 0), (MatD<5>::Identity()));
}

TEST(Propagator, MagneticEntriesAreExactHeatFactors) {
  const Grid g(16, 20.0);
  const double dt = 0.05;
  const PropagatorTable<HallMhdModel> h(g, dt, {});
  for (const auto& e : h.entries()) {
    const double decay = std::exp(-dt * g.xi_squared(e.mode.i1, e.mode.i2));
    for (int i = 3; i < 5; ++i) EXPECT_EQ(e.e(i, i), Complex(decay));
    EXPECT_EQ(e.e(3, 4), Complex(0.0));
    EXPECT_EQ(e.e(0, 3), Complex(0.0));
  }
}

TEST(Propagator, MirrorsAreConjugates) {
  const Grid g(16, 20.0);
  const PropagatorTable<OldroydModel> t(g, 0.05, {});
  for (const auto& e : t.entries()) {
    const int n = g.n();
    const int m1 = (n - e.mode.i1) % n, m2 = (n - e.mode.i2) % n;
    EXPECT_EQ(t.propagator(m1, m2), t.propagator(e.mode.i1, e.mode.i2).conjugate());
  }
}

TEST(Propagator, MatchesQuadPrecisionExponential) {
  const Grid g(16, 50.0);
  for (double dt : {0.05, 1.0}) {
    OldroydParams p;
    const PropagatorTable<OldroydModel> t(g, dt, p);
    double worst = 0.0;
    for (const auto& e : t.entries()) {
      const MatD<6> a = linear_symbol_oldroyd(g.wavenumber(e.mode.i1), g.wavenumber(e.mode.i2),
                                              p.gamma);
      const MatD<6> ref = reference_exp<6>(dt * a);
      worst = std::max(worst, (e.e - ref).norm() / ref.norm());
    }
    EXPECT_LE(worst, 1e-10) << dt;
    EXPECT_EQ(t.fallback_count(), 0);
  }
}

TEST(Propagator, PhiEntriesSatisfyTheirDefiningIdentities) {
  // z phi1(z) = e^z - I and z phi2(z) = phi1(z) - I, with P1 = dt phi1, P2 = dt phi2
  const Grid g(16, 50.0);
  const double dt = 0.05;
  const PropagatorTable<OldroydModel> t(g, dt, {});
  for (const auto& e : t.entries()) {
    const MatD<6> z =
        dt * linear_symbol_oldroyd(g.wavenumber(e.mode.i1), g.wavenumber(e.mode.i2), 1.5);
    const MatD<6> id = MatD<6>::Identity();
    EXPECT_LE((z * e.p1 / dt - (e.e - id)).norm(), 1e-13);
    EXPECT_LE((z * e.p2 / dt - (e.p1 / dt - id)).norm(), 1e-13);
  }
}

TEST(Stepper, ZeroStateStaysZero) {
  const Grid g(16, 20.0);
  OldroydState s(g);
  Stepper<OldroydModel> st(g, 0.05, s.params);
  for (int k = 0; k < 10; ++k) st.advance(s, k * 0.05);
  for (const SpectralField* f : OldroydModel::fields(std::as_const(s))) EXPECT_EQ(max_abs(*f), 0.0);
}

TEST(Stepper, LinearStepsMatchTheSemigroup) {
  const Grid g(16, 50.0);
  const double dt = 0.05, t_end = 10.0;
  const OldroydState s0 = random_oldroyd(g, 3, 1.0);
  const OldroydState s = advance<OldroydModel>(s0, dt, t_end, false);
  double worst = 0.0;
  for (const CanonicalMode& m : canonical_modes(g)) {
    const MatD<6> big = reference_exp<6>(
        t_end * linear_symbol_oldroyd(g.wavenumber(m.i1), g.wavenumber(m.i2), 1.5));
    const auto a0 = detail::gather<OldroydModel>(OldroydModel::fields(s0), m.index);
    const auto a = detail::gather<OldroydModel>(OldroydModel::fields(s), m.index);
    const detail::Vec<6> ref = big * a0;
    if (ref.norm() > 0.0) worst = std::max(worst, (a - ref).norm() / ref.norm());
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Stepper, ZeroForcingStepIsLinearStep) {
  const Grid g(16, 20.0);
  const HallMhdState s0 = random_hallmhd(g, 4, 0.1);
  HallMhdState a = s0, b = s0;
  const PropagatorTable<HallMhdModel> t(g, 0.05, s0.params);
  step<HallMhdModel>(a, t, [](const HallMhdState&, HallMhdRhs&) {});
  Stepper<HallMhdModel> lin(g, 0.05, s0.params, false);
  lin.advance(b, 0.0);
  EXPECT_EQ(state_distance<HallMhdModel>(a, b), 0.0);
}

TEST(Stepper, UnretainedModesStayZero) {
  const Grid g(16, 20.0);
  OldroydState s = random_oldroyd(g, 8, 0.05);
  Stepper<OldroydModel> st(g, 0.05, s.params);
  st.advance(s, 0.0);
  for (const SpectralField* f : OldroydModel::fields(std::as_const(s)))
    for (int i1 = 0; i1 < g.n(); ++i1)
      for (int i2 = 0; i2 < g.n(); ++i2)
        if (!g.retained(i1, i2)) EXPECT_EQ((*f).at(i1, i2), Complex(0.0));
}

TEST(Stepper, NonFiniteStateRaisesBlowUp) {
  const Grid g(16, 20.0);
  OldroydState s = random_oldroyd(g, 9, 0.05);
  s.u[0].at(1, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  Stepper<OldroydModel> st(g, 0.05, s.params, false);
  try {
    st.advance(s, 1.0);
    FAIL() << "expected BlowUpError";
  } catch (const BlowUpError& e) {
    EXPECT_NEAR(e.time(), 1.05, 1e-12);
  }
}

TEST(Stepper, ForeignGridRejected) {
  Stepper<OldroydModel> st(Grid(16, 20.0), 0.05, {});
  OldroydState s(Grid(16, 21.0));
  EXPECT_THROW(st.advance(s, 0.0), DimensionError);
}

TEST(Stepper, RepeatedTrajectoriesAreBitwiseEqual) {
  const Grid g(32, 40.0);
  IcSpec ic;
  const OldroydState s0 = generate_oldroyd(ic, g);
  const OldroydState a = advance<OldroydModel>(s0, 0.05, 2.0, true);
  const OldroydState b = advance<OldroydModel>(s0, 0.05, 2.0, true);
  for (int c = 0; c < 6; ++c) {
    const auto& fa = OldroydModel::fields(a)[c]->coeffs();
    const auto& fb = OldroydModel::fields(b)[c]->coeffs();
    EXPECT_EQ(std::memcmp(fa.data(), fb.data(), fa.size() * sizeof(Complex)), 0) << c;
  }
}

TEST(Stepper, SecondOrderSelfConvergence) {
  const Grid g(32, 20.0);
  IcSpec ic;
  ic.amplitude = 0.2;
  for (bool oldroyd : {true, false}) {
    double e1, e2;
    if (oldroyd) {
      const OldroydState s0 = generate_oldroyd(ic, g);
      const auto a = advance<OldroydModel>(s0, 0.1, 2.0, true);
      const auto b = advance<OldroydModel>(s0, 0.05, 2.0, true);
      const auto c = advance<OldroydModel>(s0, 0.025, 2.0, true);
      e1 = state_distance<OldroydModel>(a, b);
      e2 = state_distance<OldroydModel>(b, c);
    } else {
      const HallMhdState s0 = generate_hallmhd(ic, g);
      const auto a = advance<HallMhdModel>(s0, 0.1, 2.0, true);
      const auto b = advance<HallMhdModel>(s0, 0.05, 2.0, true);
      const auto c = advance<HallMhdModel>(s0, 0.025, 2.0, true);
      e1 = state_distance<HallMhdModel>(a, b);
      e2 = state_distance<HallMhdModel>(b, c);
    }
    EXPECT_GE(e1 / e2, 3.5) << oldroyd;
    EXPECT_LE(e1 / e2, 4.5) << oldroyd;
  }
}
