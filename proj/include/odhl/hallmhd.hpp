#pragma once

// Compressible Hall-MHD system in perturbation form around (1, 0, 0) with
// mu = nu = 1, lambda = 0:
//
//   rho_t + div u                              = F1
//   u_t - (Delta + grad div) u + gamma grad rho = G1
//   B_t - Delta B                               = H1,   div B = 0
//
//   F1 = -div(rho u)
//   G1 = -u.grad u - I(rho)(Delta + grad div) u - (curl B) x B / (1 + rho)
//        + k(rho) grad rho
//   H1 = curl(u x B) - curl[(curl B) x B / (1 + rho)]
//
// Planar fields: curl of a vector is the scalar d1 v2 - d2 v1, curl of a
// scalar h is (d2 h, -d1 h), and (w e_z) x B = w (-B2, B1).

#include <array>

#include <Eigen/Dense>

#include "odhl/oldroyd.hpp"
#include "odhl/spectral.hpp"

namespace odhl {

struct HallMhdParams {
  double gamma = 1.5;
  // Off drops the Hall term and leaves ordinary compressible MHD.
  bool hall = true;
  double density_floor = kDefaultDensityFloor;
};

struct HallMhdState {
  SpectralField rho;
  VectorField u;
  VectorField B;
  HallMhdParams params;

  HallMhdState() = default;
  HallMhdState(const Grid& grid, HallMhdParams p = {})
      : rho(grid), u(make_vector(grid)), B(make_vector(grid)), params(p) {}

  const Grid& grid() const { return rho.grid(); }
};

struct HallMhdRhs {
  SpectralField F1;
  VectorField G1;
  VectorField H1;

  HallMhdRhs() = default;
  explicit HallMhdRhs(const Grid& grid)
      : F1(grid), G1(make_vector(grid)), H1(make_vector(grid)) {}
};

// (curl B) x B as curl2d(B) (-B2, B1), dealiased.
VectorField lorentz_term(const VectorField& B);

// curl[((curl B) x B) / (1 + rho)] reduced to the plane.
VectorField hall_term(const VectorField& B, const SpectralField& rho,
                      double density_floor = kDefaultDensityFloor);

// curl(u x B) = u div B - (u.grad) B + (B.grad) u - B div u, dealiased.
VectorField induction_transport(const VectorField& u, const VectorField& B);

// Leray projection V - xi (xi.V) / |xi|^2; the mean mode is left alone.
VectorField project_divfree(const VectorField& v);

class HallMhdEvaluator {
 public:
  explicit HallMhdEvaluator(const Grid& grid);
  void operator()(const HallMhdState& state, HallMhdRhs& out);

 private:
  std::vector<double>& buf(int i) { return bufs_[i]; }

  Grid grid_;
  Transform tr_;
  std::vector<std::vector<double>> bufs_;
  SpectralField scratch_a_, scratch_b_;
  VectorField lorentz_;
};

HallMhdRhs nonlinear_rhs_hallmhd(const HallMhdState& state);

using Symbol5 = Eigen::Matrix<Complex, 5, 5>;

// d/dt (rho, u1, u2, B1, B2)^ = A(xi) (...)^ + nonlinear terms.
Symbol5 linear_symbol_hallmhd(double xi1, double xi2, double gamma);

struct HallMhdModel {
  using State = HallMhdState;
  using Params = HallMhdParams;
  using Rhs = HallMhdRhs;
  using Evaluator = HallMhdEvaluator;
  static constexpr int kDim = 5;
  static constexpr const char* kName = "hallmhd";

  static std::array<SpectralField*, kDim> fields(State& s) {
    return {&s.rho, &s.u[0], &s.u[1], &s.B[0], &s.B[1]};
  }
  static std::array<const SpectralField*, kDim> fields(const State& s) {
    return {&s.rho, &s.u[0], &s.u[1], &s.B[0], &s.B[1]};
  }
  static std::array<const SpectralField*, kDim> fields(const Rhs& r) {
    return {&r.F1, &r.G1[0], &r.G1[1], &r.H1[0], &r.H1[1]};
  }
  static Symbol5 symbol(double xi1, double xi2, const Params& p) {
    return linear_symbol_hallmhd(xi1, xi2, p.gamma);
  }
};

}  // namespace odhl
