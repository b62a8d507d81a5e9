#pragma once

// Compressible Oldroyd-B system in perturbation form around (1, 0, 0) with
// relaxation rate a = 1 and coupling omega = 1/2:
//
//   rho_t + div u                              = F
//   u_t - (Delta + grad div) u / 2 + gamma grad rho - div tau = G
//   tau_t + tau - D(u)                         = H
//
//   F = -div(rho u)
//   G = -u.grad u - I(rho)(Delta + grad div) u / 2 - I(rho) div tau
//       + k(rho) grad rho
//   H = -u.grad tau - g_b(tau, grad u)

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "odhl/spectral.hpp"

namespace odhl {

inline constexpr double kDefaultDensityFloor = 0.5;

// grad_u(j, k) = d_k u_j
using Mat2 = std::array<std::array<double, 2>, 2>;

struct SymTensor2 {
  double xx = 0.0, xy = 0.0, yy = 0.0;
  friend bool operator==(const SymTensor2&, const SymTensor2&) = default;
};

// Pointwise I(rho) = rho / (1 + rho) and
// k(rho) = gamma I(rho) + (gamma - P'(1 + rho)) / (1 + rho), P = rho^gamma.
struct MaterialCoeffs {
  std::vector<double> inertia;
  std::vector<double> pressure;
};

// Throws VacuumError when min(1 + rho) < density_floor.
MaterialCoeffs material_coeffs(std::span<const double> rho, double gamma,
                               double density_floor = kDefaultDensityFloor);
void check_density(std::span<const double> rho, double density_floor);

// tau W - W tau + b (D tau + tau D), W and D the antisymmetric and symmetric
// parts of grad_u.
SymTensor2 g_b(const SymTensor2& tau, const Mat2& grad_u, double b);

struct OldroydParams {
  double gamma = 1.5;
  double b = 0.5;
  double density_floor = kDefaultDensityFloor;
};

struct OldroydState {
  SpectralField rho;
  VectorField u;
  SymTensorField tau;
  OldroydParams params;

  OldroydState() = default;
  OldroydState(const Grid& grid, OldroydParams p = {})
      : rho(grid), u(make_vector(grid)), tau(make_tensor(grid)), params(p) {}

  const Grid& grid() const { return rho.grid(); }
};

struct OldroydRhs {
  SpectralField F;
  VectorField G;
  SymTensorField H;

  OldroydRhs() = default;
  explicit OldroydRhs(const Grid& grid)
      : F(grid), G(make_vector(grid)), H(make_tensor(grid)) {}
};

// Pseudo-spectral evaluation of (F, G, H). Every product is formed from
// dealiased factors and dealiased again; I(rho) and k(rho) are sampled from
// the dealiased density and then dealiased themselves. Owns its transform
// workspace, so one evaluator per worker.
class OldroydEvaluator {
 public:
  explicit OldroydEvaluator(const Grid& grid);
  void operator()(const OldroydState& state, OldroydRhs& out);

 private:
  std::vector<double>& buf(int i) { return bufs_[i]; }

  Grid grid_;
  Transform tr_;
  std::vector<std::vector<double>> bufs_;
  SpectralField scratch_a_, scratch_b_;
};

OldroydRhs nonlinear_rhs_oldroyd(const OldroydState& state);

using Symbol6 = Eigen::Matrix<Complex, 6, 6>;

// d/dt (rho, u1, u2, tau11, tau12, tau22)^ = A(xi) (...)^ + nonlinear terms.
Symbol6 linear_symbol_oldroyd(double xi1, double xi2, double gamma);

struct OldroydModel {
  using State = OldroydState;
  using Params = OldroydParams;
  using Rhs = OldroydRhs;
  using Evaluator = OldroydEvaluator;
  static constexpr int kDim = 6;
  static constexpr const char* kName = "oldroyd";

  static std::array<SpectralField*, kDim> fields(State& s) {
    return {&s.rho, &s.u[0], &s.u[1], &s.tau.xx, &s.tau.xy, &s.tau.yy};
  }
  static std::array<const SpectralField*, kDim> fields(const State& s) {
    return {&s.rho, &s.u[0], &s.u[1], &s.tau.xx, &s.tau.xy, &s.tau.yy};
  }
  static std::array<const SpectralField*, kDim> fields(const Rhs& r) {
    return {&r.F, &r.G[0], &r.G[1], &r.H.xx, &r.H.xy, &r.H.yy};
  }
  static Symbol6 symbol(double xi1, double xi2, const Params& p) {
    return linear_symbol_oldroyd(xi1, xi2, p.gamma);
  }
};

}  // namespace odhl
