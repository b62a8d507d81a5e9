#include "oracle.hpp"

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// e^{i 2 pi m / n} for every m, so the direct sums avoid repeated sin/cos.
std::vector<cd> roots(int n, double sign) {
  std::vector<cd> r(n);
  for (int m = 0; m < n; ++m) r[m] = std::polar(1.0, sign * kTwoPi * m / n);
  return r;
}

}  // namespace

Spectrum dft(const Box& b, const std::vector<double>& samples) {
  const int n = b.n;
  const auto w = roots(n, -1.0);
  Spectrum out(b.size());
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) {
      cd acc = 0.0;
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2)
          acc += samples[b.at(x1, x2)] * w[(k1 * x1 + k2 * x2) % n];
      out[b.at(k1, k2)] = acc * (b.L / (static_cast<double>(n) * n));
    }
  return out;
}

std::vector<double> idft(const Box& b, const Spectrum& f) {
  const int n = b.n;
  const auto w = roots(n, 1.0);
  std::vector<double> out(b.size());
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      cd acc = 0.0;
      for (int k1 = 0; k1 < n; ++k1)
        for (int k2 = 0; k2 < n; ++k2) acc += f[b.at(k1, k2)] * w[(k1 * x1 + k2 * x2) % n];
      out[b.at(x1, x2)] = acc.real() / b.L;
    }
  return out;
}

Spectrum truncate(const Box& b, Spectrum f) {
  for (int i1 = 0; i1 < b.n; ++i1)
    for (int i2 = 0; i2 < b.n; ++i2)
      if (!b.kept(i1, i2)) f[b.at(i1, i2)] = 0.0;
  return f;
}

Spectrum convolve(const Box& b, const Spectrum& f, const Spectrum& g) {
  const int r = (b.n - 1) / 3;
  Spectrum out(b.size());
  for (int k1 = -r; k1 <= r; ++k1)
    for (int k2 = -r; k2 <= r; ++k2) {
      cd acc = 0.0;
      for (int p1 = -r; p1 <= r; ++p1)
        for (int p2 = -r; p2 <= r; ++p2) {
          const int q1 = k1 - p1, q2 = k2 - p2;
          if (!b.kept(q1) || !b.kept(q2)) continue;
          acc += f[b.at(b.slot(p1), b.slot(p2))] * g[b.at(b.slot(q1), b.slot(q2))];
        }
      out[b.at(b.slot(k1), b.slot(k2))] = acc / b.L;
    }
  return out;
}

Spectrum partial(const Box& b, const Spectrum& f, int axis) {
  Spectrum out(b.size());
  for (int i1 = 0; i1 < b.n; ++i1)
    for (int i2 = 0; i2 < b.n; ++i2) {
      if (!b.kept(i1, i2)) continue;
      const double k = axis == 0 ? b.xi(i1) : b.xi(i2);
      out[b.at(i1, i2)] = cd(0.0, k) * f[b.at(i1, i2)];
    }
  return out;
}

Spectrum add(Spectrum a, const Spectrum& b, double scale) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

Spectrum random_field(const Box& b, std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> s(b.size());
  for (double& v : s) v = amplitude * normal(rng);
  return truncate(b, dft(b, s));
}

namespace {

// -|xi|^2 u_j - xi_j (xi . u) scaled by c, on retained modes.
Spectrum viscous(const Box& b, const Spectrum& u0, const Spectrum& u1, int j, double c) {
  Spectrum out(b.size());
  for (int i1 = 0; i1 < b.n; ++i1)
    for (int i2 = 0; i2 < b.n; ++i2) {
      if (!b.kept(i1, i2)) continue;
      const std::size_t k = b.at(i1, i2);
      const double a = b.xi(i1), d = b.xi(i2);
      const cd dot = a * u0[k] + d * u1[k];
      out[k] = c * (-(a * a + d * d) * (j == 0 ? u0[k] : u1[k]) - (j == 0 ? a : d) * dot);
    }
  return out;
}

Spectrum scaled(Spectrum a, double s) {
  for (cd& v : a) v *= s;
  return a;
}

}  // namespace

std::vector<Spectrum> oldroyd_rhs(const Box& b, const std::vector<Spectrum>& s, double gamma,
                                  double slip) {
  const Spectrum& rho = s[0];
  const Spectrum* u[2] = {&s[1], &s[2]};
  const Spectrum* t[2][2] = {{&s[3], &s[4]}, {&s[4], &s[5]}};

  const Spectrum inertia = compose(b, rho, [](double r) { return r / (1.0 + r); });
  const Spectrum press = compose(b, rho, [gamma](double r) {
    const double d = 1.0 + r;
    return gamma * r / d + (gamma - gamma * std::pow(d, gamma - 1.0)) / d;
  });

  Spectrum du[2][2];
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) du[j][k] = partial(b, *u[j], k);

  std::vector<Spectrum> out(6, Spectrum(b.size()));
  const Spectrum f0 = convolve(b, rho, *u[0]);
  const Spectrum f1 = convolve(b, rho, *u[1]);
  out[0] = scaled(add(partial(b, f0, 0), partial(b, f1, 1)), -1.0);

  for (int j = 0; j < 2; ++j) {
    Spectrum g(b.size());
    for (int k = 0; k < 2; ++k) g = add(g, convolve(b, *u[k], du[j][k]), -1.0);
    g = add(g, convolve(b, inertia, viscous(b, *u[0], *u[1], j, 0.5)), -1.0);
    const Spectrum divtau = add(partial(b, *t[j][0], 0), partial(b, *t[j][1], 1));
    g = add(g, convolve(b, inertia, divtau), -1.0);
    g = add(g, convolve(b, press, partial(b, rho, j)));
    out[1 + j] = g;
  }

  Spectrum w[2][2], d[2][2];
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      w[j][k] = scaled(add(du[j][k], du[k][j], -1.0), 0.5);
      d[j][k] = scaled(add(du[j][k], du[k][j]), 0.5);
    }
  const int comp[3][2] = {{0, 0}, {0, 1}, {1, 1}};
  for (int c = 0; c < 3; ++c) {
    const int j = comp[c][0], k = comp[c][1];
    Spectrum h(b.size());
    for (int l = 0; l < 2; ++l) h = add(h, convolve(b, *u[l], partial(b, *t[j][k], l)), -1.0);
    for (int l = 0; l < 2; ++l) {
      h = add(h, convolve(b, *t[j][l], w[l][k]), -1.0);
      h = add(h, convolve(b, w[j][l], *t[l][k]));
      h = add(h, convolve(b, d[j][l], *t[l][k]), -slip);
      h = add(h, convolve(b, *t[j][l], d[l][k]), -slip);
    }
    out[3 + c] = h;
  }
  return out;
}

std::vector<Spectrum> hallmhd_rhs(const Box& b, const std::vector<Spectrum>& s, double gamma,
                                  bool hall) {
  const Spectrum& rho = s[0];
  const Spectrum* u[2] = {&s[1], &s[2]};
  const Spectrum* B[2] = {&s[3], &s[4]};

  const Spectrum inertia = compose(b, rho, [](double r) { return r / (1.0 + r); });
  const Spectrum press = compose(b, rho, [gamma](double r) {
    const double d = 1.0 + r;
    return gamma * r / d + (gamma - gamma * std::pow(d, gamma - 1.0)) / d;
  });
  const Spectrum recip = compose(b, rho, [](double r) { return 1.0 / (1.0 + r); });

  std::vector<Spectrum> out(5, Spectrum(b.size()));
  out[0] = scaled(add(partial(b, convolve(b, rho, *u[0]), 0),
                      partial(b, convolve(b, rho, *u[1]), 1)),
                  -1.0);

  const Spectrum omega = add(partial(b, *B[1], 0), partial(b, *B[0], 1), -1.0);
  const Spectrum lorentz[2] = {scaled(convolve(b, omega, *B[1]), -1.0),
                               convolve(b, omega, *B[0])};
  const Spectrum q[2] = {convolve(b, recip, lorentz[0]), convolve(b, recip, lorentz[1])};

  for (int j = 0; j < 2; ++j) {
    Spectrum g(b.size());
    for (int k = 0; k < 2; ++k) g = add(g, convolve(b, *u[k], partial(b, *u[j], k)), -1.0);
    g = add(g, convolve(b, inertia, viscous(b, *u[0], *u[1], j, 1.0)), -1.0);
    g = add(g, convolve(b, press, partial(b, rho, j)));
    g = add(g, q[j], -1.0);
    out[1 + j] = g;
  }

  // curl(u x B) = (d2 e, -d1 e) with e = u1 B2 - u2 B1
  Spectrum e = add(convolve(b, *u[0], *B[1]), convolve(b, *u[1], *B[0]), -1.0);
  if (hall) e = add(e, add(partial(b, q[1], 0), partial(b, q[0], 1), -1.0), -1.0);
  out[3] = partial(b, e, 1);
  out[4] = scaled(partial(b, e, 0), -1.0);
  return out;
}

double norm(const std::vector<Spectrum>& a) {
  double s = 0.0;
  for (const Spectrum& f : a)
    for (const cd& v : f) s += std::norm(v);
  return std::sqrt(s);
}

double distance(const std::vector<Spectrum>& a, const std::vector<Spectrum>& b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c)
    for (std::size_t i = 0; i < a[c].size(); ++i) s += std::norm(a[c][i] - b[c][i]);
  return std::sqrt(s);
}

namespace {

using Q = boost::multiprecision::cpp_bin_float_quad;

struct Qc {
  Q re = 0, im = 0;
};

Qc operator*(const Qc& a, const Qc& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Qc& operator+=(Qc& a, const Qc& b) {
  a.re += b.re;
  a.im += b.im;
  return a;
}

using Mq = std::vector<Qc>;

Mq matmul(const Mq& a, const Mq& b, int m) {
  Mq c(a.size());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j) c[i * m + j] += a[i * m + k] * b[k * m + j];
  return c;
}

}  // namespace

std::vector<cd> expm_quad(const std::vector<cd>& z, int m) {
  double size = 0.0;
  for (const cd& v : z) size += std::abs(v);
  int squarings = 0;
  while (size > 0.25) {
    size /= 2.0;
    ++squarings;
  }
  const Q scale = boost::multiprecision::ldexp(Q(1), -squarings);
  Mq a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) a[i] = {Q(z[i].real()) * scale, Q(z[i].imag()) * scale};

  Mq sum(z.size()), term(z.size());
  for (int i = 0; i < m; ++i) sum[i * m + i].re = term[i * m + i].re = 1;
  for (int k = 1; k <= 40; ++k) {
    term = matmul(term, a, m);
    for (Qc& v : term) {
      v.re /= k;
      v.im /= k;
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
  }
  for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum, m);

  std::vector<cd> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out[i] = cd(static_cast<double>(sum[i].re), static_cast<double>(sum[i].im));
  return out;
}

}  // namespace oracle
