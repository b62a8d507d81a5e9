#include "odhl/integrator.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace odhl {

namespace {

// e^z - 1 without cancellation near z = 0.
Complex expm1(Complex z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

Complex phi1(Complex z) {
  if (z == Complex(0.0)) return 1.0;
  return expm1(z) / z;
}

Complex phi2(Complex z) {
  if (std::abs(z) < 0.5) {
    // sum_k z^k / (k + 2)!
    Complex term = 0.5, sum = 0.0;
    for (int k = 0; k < 24; ++k) {
      sum += term;
      term *= z / double(k + 3);
    }
    return sum;
  }
  return (expm1(z) - z) / (z * z);
}

Eigen::MatrixXcd expm_pade(const Eigen::MatrixXcd& z) { return z.exp(); }

PhiMatrices phi_functions(const Eigen::MatrixXcd& z, double max_condition) {
  const Eigen::Index m = z.rows();
  if (z.cols() != m) throw DimensionError("phi_functions needs a square matrix");
  PhiMatrices out;

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(z);
  if (es.info() == Eigen::Success) {
    const Eigen::MatrixXcd& v = es.eigenvectors();
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(v).singularValues();
    const double cond = sv(0) / sv(m - 1);
    if (std::isfinite(cond) && cond <= max_condition) {
      const Eigen::MatrixXcd vinv = v.inverse();
      Eigen::VectorXcd fe(m), f1(m), f2(m);
      for (Eigen::Index i = 0; i < m; ++i) {
        const Complex l = es.eigenvalues()(i);
        fe(i) = std::exp(l);
        f1(i) = phi1(l);
        f2(i) = phi2(l);
      }
      out.e = v * fe.asDiagonal() * vinv;
      out.phi1 = v * f1.asDiagonal() * vinv;
      out.phi2 = v * f2.asDiagonal() * vinv;
      return out;
    }
  }

  Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(3 * m, 3 * m);
  big.topLeftCorner(m, m) = z;
  big.block(0, m, m, m).setIdentity();
  big.block(m, 2 * m, m, m).setIdentity();
  const Eigen::MatrixXcd eb = big.exp();
  out.e = eb.topLeftCorner(m, m);
  out.phi1 = eb.block(0, m, m, m);
  out.phi2 = eb.block(0, 2 * m, m, m);
  out.fallback = true;
  return out;
}

std::vector<CanonicalMode> canonical_modes(const Grid& grid) {
  std::vector<CanonicalMode> out;
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      if (!grid.retained(i1, i2)) continue;
      const int k1 = grid.mode(i1), k2 = grid.mode(i2);
      if (k2 < 0 || (k2 == 0 && k1 < 0)) continue;
      out.push_back({i1, i2, static_cast<std::uint32_t>(grid.index(i1, i2)),
                     static_cast<std::uint32_t>(grid.mirror(i1, i2))});
    }
  return out;
}

}  // namespace odhl
