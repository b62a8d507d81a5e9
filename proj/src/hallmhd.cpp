#include "odhl/hallmhd.hpp"

#include "model_kernels.hpp"

namespace odhl {

namespace {

// Dealiased samples of rho and of 1 / (1 + rho), density floor enforced.
SpectralField reciprocal_density(const SpectralField& rho, double floor) {
  const Grid& g = rho.grid();
  Transform& tr = workspace(g);
  const kernels::Wavenumbers wn(g);
  std::vector<double> samples(g.size());
  tr.inverse(rho, wn.mask(), samples);
  check_density(samples, floor);
  for (double& v : samples) v = 1.0 / (1.0 + v);
  SpectralField out(g);
  tr.forward_dealiased(samples, out);
  return out;
}

}  // namespace

VectorField lorentz_term(const VectorField& B) {
  const SpectralField w = curl2d(B);
  return {dealiased_product(w, Complex(-1.0) * B[1]), dealiased_product(w, B[0])};
}

VectorField hall_term(const VectorField& B, const SpectralField& rho,
                      double density_floor) {
  const SpectralField recip = reciprocal_density(rho, density_floor);
  const VectorField l = lorentz_term(B);
  const VectorField q = {dealiased_product(recip, l[0]),
                         dealiased_product(recip, l[1])};
  return perp_curl2d(curl2d(q));
}

VectorField induction_transport(const VectorField& u, const VectorField& B) {
  const SpectralField div_b = divergence(B);
  const SpectralField div_u = divergence(u);
  const VectorField grad_b[2] = {gradient(B[0]), gradient(B[1])};
  const VectorField grad_u[2] = {gradient(u[0]), gradient(u[1])};
  VectorField out;
  for (int j = 0; j < 2; ++j) {
    SpectralField acc = dealiased_product(u[j], div_b);
    for (int k = 0; k < 2; ++k) {
      acc -= dealiased_product(u[k], grad_b[j][k]);
      acc += dealiased_product(B[k], grad_u[j][k]);
    }
    acc -= dealiased_product(B[j], div_u);
    out[j] = std::move(acc);
  }
  return out;
}

VectorField project_divfree(const VectorField& v) {
  const Grid& g = v[0].grid();
  if (!(v[1].grid() == g)) throw DimensionError("vector components on different grids");
  VectorField out = v;
  for (int i1 = 0; i1 < g.n(); ++i1)
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double a = g.derivative_wavenumber(i1), b = g.derivative_wavenumber(i2);
      const double k2 = a * a + b * b;
      if (k2 == 0.0) continue;
      const std::size_t k = g.index(i1, i2);
      const Complex dot = (a * v[0][k] + b * v[1][k]) / k2;
      out[0][k] = v[0][k] - a * dot;
      out[1][k] = v[1][k] - b * dot;
    }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

enum Buf {
  kRho,
  kU0, kU1,
  kDu00, kDu01, kDu10, kDu11,  // d_k u_j at kDu00 + 2j + k
  kDrho0, kDrho1,
  kB0, kB1,
  kDb00, kDb01, kDb10, kDb11,  // d_k B_j at kDb00 + 2j + k
  kVisc0, kVisc1,
  kInertia, kPressure, kRecip,
  kLorentz0, kLorentz1,
  kWork0, kWork1,
  kBufCount
};

}  // namespace

HallMhdEvaluator::HallMhdEvaluator(const Grid& grid)
    : grid_(grid),
      tr_(grid),
      bufs_(kBufCount, std::vector<double>(grid.size())),
      scratch_a_(grid),
      scratch_b_(grid),
      lorentz_(make_vector(grid)) {}

void HallMhdEvaluator::operator()(const HallMhdState& s, HallMhdRhs& out) {
  if (!(s.grid() == grid_)) throw DimensionError("state grid differs from evaluator grid");
  if (!(out.F1.grid() == grid_)) out = HallMhdRhs(grid_);
  const kernels::Wavenumbers wn(grid_);
  const Complex I(0.0, 1.0);
  const std::size_t n2 = grid_.size();

  tr_.inverse(s.rho, wn.mask(), buf(kRho));
  for (int j = 0; j < 2; ++j) {
    tr_.inverse(s.u[j], wn.mask(), buf(kU0 + j));
    tr_.inverse(s.B[j], wn.mask(), buf(kB0 + j));
    for (int k = 0; k < 2; ++k) {
      tr_.inverse(s.u[j], wn.derivative(k), buf(kDu00 + 2 * j + k));
      tr_.inverse(s.B[j], wn.derivative(k), buf(kDb00 + 2 * j + k));
    }
    tr_.inverse(s.rho, wn.derivative(j), buf(kDrho0 + j));
    tr_.inverse_generated(
        [&](int i1, int i2) {
          return wn.m(i1, i2) *
                 kernels::viscous(wn, i1, i2, s.u[0].at(i1, i2), s.u[1].at(i1, i2), j);
        },
        buf(kVisc0 + j));
  }

  const MaterialCoeffs mc = material_coeffs(buf(kRho), s.params.gamma,
                                            s.params.density_floor);
  kernels::dealias_samples(tr_, mc.inertia, scratch_a_, buf(kInertia));
  kernels::dealias_samples(tr_, mc.pressure, scratch_a_, buf(kPressure));
  for (std::size_t i = 0; i < n2; ++i) buf(kWork0)[i] = 1.0 / (1.0 + buf(kRho)[i]);
  kernels::dealias_samples(tr_, buf(kWork0), scratch_a_, buf(kRecip));

  // F1 = -div(rho u)
  for (std::size_t i = 0; i < n2; ++i) {
    buf(kWork0)[i] = buf(kRho)[i] * buf(kU0)[i];
    buf(kWork1)[i] = buf(kRho)[i] * buf(kU1)[i];
  }
  tr_.forward_dealiased(buf(kWork0), scratch_a_);
  tr_.forward_dealiased(buf(kWork1), scratch_b_);
  kernels::negative_divergence(wn, scratch_a_, scratch_b_, out.F1);

  // Lorentz force w (-B2, B1), then Q = P((curl B) x B / (1 + rho)) in lorentz_.
  for (std::size_t i = 0; i < n2; ++i) {
    const double w = buf(kDb10)[i] - buf(kDb01)[i];
    buf(kWork0)[i] = -w * buf(kB1)[i];
    buf(kWork1)[i] = w * buf(kB0)[i];
  }
  for (int j = 0; j < 2; ++j) {
    tr_.forward_dealiased(buf(kWork0 + j), lorentz_[j]);
    tr_.inverse(lorentz_[j], buf(kLorentz0 + j));
  }
  for (int j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < n2; ++i)
      buf(kWork0)[i] = buf(kRecip)[i] * buf(kLorentz0 + j)[i];
    tr_.forward_dealiased(buf(kWork0), lorentz_[j]);
  }

  // G1_j = -u_k d_k u_j - I visc_j + k d_j rho - Q_j
  for (int j = 0; j < 2; ++j) {
    auto& g = buf(kWork0);
    const auto& ux = buf(kU0);
    const auto& uy = buf(kU1);
    const auto& dx = buf(kDu00 + 2 * j);
    const auto& dy = buf(kDu00 + 2 * j + 1);
    const auto& inertia = buf(kInertia);
    const auto& visc = buf(kVisc0 + j);
    const auto& press = buf(kPressure);
    const auto& drho = buf(kDrho0 + j);
    for (std::size_t i = 0; i < n2; ++i)
      g[i] = -(ux[i] * dx[i] + uy[i] * dy[i]) - inertia[i] * visc[i] +
             press[i] * drho[i];
    tr_.forward_dealiased(g, out.G1[j]);
    out.G1[j] -= lorentz_[j];
  }

  // curl(u x B) = u div B - (u.grad) B + (B.grad) u - B div u
  for (int j = 0; j < 2; ++j) {
    auto& h = buf(kWork0);
    for (std::size_t i = 0; i < n2; ++i) {
      const double div_b = buf(kDb00)[i] + buf(kDb11)[i];
      const double div_u = buf(kDu00)[i] + buf(kDu11)[i];
      h[i] = buf(kU0 + j)[i] * div_b -
             (buf(kU0)[i] * buf(kDb00 + 2 * j)[i] + buf(kU1)[i] * buf(kDb00 + 2 * j + 1)[i]) +
             (buf(kB0)[i] * buf(kDu00 + 2 * j)[i] + buf(kB1)[i] * buf(kDu00 + 2 * j + 1)[i]) -
             buf(kB0 + j)[i] * div_u;
    }
    tr_.forward_dealiased(h, out.H1[j]);
  }

  if (s.params.hall) {
    // h = curl2d(Q); Hall vector (d2 h, -d1 h)
    for (int i1 = 0; i1 < grid_.n(); ++i1)
      for (int i2 = 0; i2 < grid_.n(); ++i2) {
        const std::size_t k = grid_.index(i1, i2);
        const Complex h = I * (wn.k(i1) * lorentz_[1][k] - wn.k(i2) * lorentz_[0][k]);
        out.H1[0][k] -= I * wn.k(i2) * h;
        out.H1[1][k] += I * wn.k(i1) * h;
      }
  }
  out.H1 = project_divfree(out.H1);
}

HallMhdRhs nonlinear_rhs_hallmhd(const HallMhdState& state) {
  HallMhdEvaluator eval(state.grid());
  HallMhdRhs out(state.grid());
  eval(state, out);
  return out;
}

Symbol5 linear_symbol_hallmhd(double xi1, double xi2, double gamma) {
  const Complex I(0.0, 1.0);
  const double k2 = xi1 * xi1 + xi2 * xi2;
  Symbol5 a = Symbol5::Zero();
  a(0, 1) = -I * xi1;
  a(0, 2) = -I * xi2;
  a(1, 0) = -I * gamma * xi1;
  a(1, 1) = -k2 - xi1 * xi1;
  a(1, 2) = -xi1 * xi2;
  a(2, 0) = -I * gamma * xi2;
  a(2, 1) = -xi2 * xi1;
  a(2, 2) = -k2 - xi2 * xi2;
  a(3, 3) = -k2;
  a(4, 4) = -k2;
  return a;
}

}  // namespace odhl
