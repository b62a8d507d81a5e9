#include "odhl/oldroyd.hpp"

#include <algorithm>
#include <cmath>

#include "model_kernels.hpp"

namespace odhl {

void check_density(std::span<const double> rho, double density_floor) {
  double lowest = 1.0 + *std::min_element(rho.begin(), rho.end());
  if (!(lowest >= density_floor)) throw VacuumError(lowest, density_floor);
}

MaterialCoeffs material_coeffs(std::span<const double> rho, double gamma,
                               double density_floor) {
  check_density(rho, density_floor);
  MaterialCoeffs out{std::vector<double>(rho.size()),
                     std::vector<double>(rho.size())};
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double density = 1.0 + rho[i];
    const double inertia = rho[i] / density;
    const double dp = gamma * std::pow(density, gamma - 1.0);
    out.inertia[i] = inertia;
    out.pressure[i] = gamma * inertia + (gamma - dp) / density;
  }
  return out;
}

SymTensor2 g_b(const SymTensor2& tau, const Mat2& grad_u, double b) {
  const double t[2][2] = {{tau.xx, tau.xy}, {tau.xy, tau.yy}};
  double w[2][2], d[2][2];
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      w[j][k] = 0.5 * (grad_u[j][k] - grad_u[k][j]);
      d[j][k] = 0.5 * (grad_u[j][k] + grad_u[k][j]);
    }
  auto entry = [&](int j, int k) {
    double v = 0.0;
    for (int l = 0; l < 2; ++l)
      v += t[j][l] * w[l][k] - w[j][l] * t[l][k] +
           b * (d[j][l] * t[l][k] + t[j][l] * d[l][k]);
    return v;
  };
  return {entry(0, 0), entry(0, 1), entry(1, 1)};
}

// ---------------------------------------------------------------------------

namespace {

enum Buf {
  kRho,
  kU0, kU1,
  kDu00, kDu01, kDu10, kDu11,  // d_k u_j at kDu00 + 2j + k
  kDrho0, kDrho1,
  kTau0, kTau1, kTau2,         // xx, xy, yy
  kDtau,                       // d_l tau_c at kDtau + 2c + l
  kDivTau0 = kDtau + 6, kDivTau1,
  kVisc0, kVisc1,
  kInertia, kPressure,
  kWork0, kWork1,
  kBufCount
};

}  // namespace

OldroydEvaluator::OldroydEvaluator(const Grid& grid)
    : grid_(grid),
      tr_(grid),
      bufs_(kBufCount, std::vector<double>(grid.size())),
      scratch_a_(grid),
      scratch_b_(grid) {}

void OldroydEvaluator::operator()(const OldroydState& s, OldroydRhs& out) {
  if (!(s.grid() == grid_)) throw DimensionError("state grid differs from evaluator grid");
  if (!(out.F.grid() == grid_)) out = OldroydRhs(grid_);
  const kernels::Wavenumbers wn(grid_);
  const Complex I(0.0, 1.0);
  const SpectralField* tau[3] = {&s.tau.xx, &s.tau.xy, &s.tau.yy};

  // Physical-space samples of every dealiased factor.
  tr_.inverse(s.rho, wn.mask(), buf(kRho));
  for (int j = 0; j < 2; ++j) {
    tr_.inverse(s.u[j], wn.mask(), buf(kU0 + j));
    for (int k = 0; k < 2; ++k)
      tr_.inverse(s.u[j], wn.derivative(k), buf(kDu00 + 2 * j + k));
    tr_.inverse(s.rho, wn.derivative(j), buf(kDrho0 + j));
  }
  for (int c = 0; c < 3; ++c) {
    tr_.inverse(*tau[c], wn.mask(), buf(kTau0 + c));
    for (int l = 0; l < 2; ++l)
      tr_.inverse(*tau[c], wn.derivative(l), buf(kDtau + 2 * c + l));
  }
  // div tau_j = d_k tau_jk
  tr_.inverse_generated(
      [&](int i1, int i2) {
        return wn.m(i1, i2) * I *
               (wn.k(i1) * s.tau.xx.at(i1, i2) + wn.k(i2) * s.tau.xy.at(i1, i2));
      },
      buf(kDivTau0));
  tr_.inverse_generated(
      [&](int i1, int i2) {
        return wn.m(i1, i2) * I *
               (wn.k(i1) * s.tau.xy.at(i1, i2) + wn.k(i2) * s.tau.yy.at(i1, i2));
      },
      buf(kDivTau1));
  for (int j = 0; j < 2; ++j)
    tr_.inverse_generated(
        [&](int i1, int i2) {
          return wn.m(i1, i2) *
                 kernels::viscous(wn, i1, i2, s.u[0].at(i1, i2), s.u[1].at(i1, i2), j);
        },
        buf(kVisc0 + j));

  const MaterialCoeffs mc = material_coeffs(buf(kRho), s.params.gamma,
                                            s.params.density_floor);
  kernels::dealias_samples(tr_, mc.inertia, scratch_a_, buf(kInertia));
  kernels::dealias_samples(tr_, mc.pressure, scratch_a_, buf(kPressure));

  const std::size_t n2 = grid_.size();

  // F = -div(rho u)
  for (std::size_t i = 0; i < n2; ++i) {
    buf(kWork0)[i] = buf(kRho)[i] * buf(kU0)[i];
    buf(kWork1)[i] = buf(kRho)[i] * buf(kU1)[i];
  }
  tr_.forward_dealiased(buf(kWork0), scratch_a_);
  tr_.forward_dealiased(buf(kWork1), scratch_b_);
  kernels::negative_divergence(wn, scratch_a_, scratch_b_, out.F);

  // G_j = -u_k d_k u_j - I visc_j / 2 - I div tau_j + k d_j rho
  for (int j = 0; j < 2; ++j) {
    auto& g = buf(kWork0);
    const auto& ux = buf(kU0);
    const auto& uy = buf(kU1);
    const auto& dx = buf(kDu00 + 2 * j);
    const auto& dy = buf(kDu00 + 2 * j + 1);
    const auto& inertia = buf(kInertia);
    const auto& visc = buf(kVisc0 + j);
    const auto& divtau = buf(kDivTau0 + j);
    const auto& press = buf(kPressure);
    const auto& drho = buf(kDrho0 + j);
    for (std::size_t i = 0; i < n2; ++i)
      g[i] = -(ux[i] * dx[i] + uy[i] * dy[i]) - 0.5 * inertia[i] * visc[i] -
             inertia[i] * divtau[i] + press[i] * drho[i];
    tr_.forward_dealiased(g, out.G[j]);
  }

  // H = -u.grad tau - g_b(tau, grad u)
  SpectralField* h_out[3] = {&out.H.xx, &out.H.xy, &out.H.yy};
  for (int c = 0; c < 3; ++c) {
    auto& h = buf(kWork0);
    for (std::size_t i = 0; i < n2; ++i) {
      const SymTensor2 t{buf(kTau0)[i], buf(kTau1)[i], buf(kTau2)[i]};
      const Mat2 gu{{{buf(kDu00)[i], buf(kDu01)[i]}, {buf(kDu10)[i], buf(kDu11)[i]}}};
      const SymTensor2 gb = g_b(t, gu, s.params.b);
      const double gbc = c == 0 ? gb.xx : (c == 1 ? gb.xy : gb.yy);
      h[i] = -(buf(kU0)[i] * buf(kDtau + 2 * c)[i] +
               buf(kU1)[i] * buf(kDtau + 2 * c + 1)[i]) -
             gbc;
    }
    tr_.forward_dealiased(h, *h_out[c]);
  }
}

OldroydRhs nonlinear_rhs_oldroyd(const OldroydState& state) {
  OldroydEvaluator eval(state.grid());
  OldroydRhs out(state.grid());
  eval(state, out);
  return out;
}

Symbol6 linear_symbol_oldroyd(double xi1, double xi2, double gamma) {
  const Complex I(0.0, 1.0);
  const double k2 = xi1 * xi1 + xi2 * xi2;
  Symbol6 a = Symbol6::Zero();
  // rho
  a(0, 1) = -I * xi1;
  a(0, 2) = -I * xi2;
  // u_j: -|xi|^2 u_j / 2 - xi_j (xi.u) / 2 - i gamma xi_j rho + i xi_k tau_jk
  a(1, 0) = -I * gamma * xi1;
  a(1, 1) = -0.5 * k2 - 0.5 * xi1 * xi1;
  a(1, 2) = -0.5 * xi1 * xi2;
  a(1, 3) = I * xi1;
  a(1, 4) = I * xi2;
  a(2, 0) = -I * gamma * xi2;
  a(2, 1) = -0.5 * xi2 * xi1;
  a(2, 2) = -0.5 * k2 - 0.5 * xi2 * xi2;
  a(2, 4) = I * xi1;
  a(2, 5) = I * xi2;
  // tau_jk: -tau_jk + (i/2)(xi_k u_j + xi_j u_k)
  a(3, 1) = I * xi1;
  a(3, 3) = -1.0;
  a(4, 1) = 0.5 * I * xi2;
  a(4, 2) = 0.5 * I * xi1;
  a(4, 4) = -1.0;
  a(5, 2) = I * xi2;
  a(5, 5) = -1.0;
  return a;
}

}  // namespace odhl
