#include "odhl/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace odhl {

namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 8.0 / 3.0;

// exp(-1/x) mollifier bump on (3/4, 8/3), unnormalized.
double raw_bump(double r) {
  const double x = (r - kInner) / (kOuter - kInner);
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (x * (1.0 - x)));
}

}  // namespace

double FilterBank::profile(double r) {
  const double psi = raw_bump(r);
  if (psi == 0.0) return 0.0;
  // Only the neighbouring dilations can overlap the support of psi.
  return psi / (raw_bump(0.5 * r) + psi + raw_bump(2.0 * r));
}

FilterBank::FilterBank(const Grid& grid) : grid_(grid) {
  j_min_ = static_cast<int>(std::floor(std::log2(grid.dk() * kInner / 2.0)));
  j_max_ = static_cast<int>(std::ceil(std::log2(grid.max_wavenumber() * 4.0 / 3.0)));
  const int n = grid.n();
  const int count = j_max_ - j_min_ + 1;
  dense_.assign(count, std::vector<double>(grid.size(), 0.0));
  sparse_.assign(count, {});
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      if (i1 == 0 && i2 == 0) continue;
      const double r = std::sqrt(grid.xi_squared(i1, i2));
      const auto idx = static_cast<std::uint32_t>(grid.index(i1, i2));
      for (int j = j_min_; j <= j_max_; ++j) {
        const double w = profile(std::ldexp(r, -j));
        if (w == 0.0) continue;
        dense_[j - j_min_][idx] = w;
        sparse_[j - j_min_].push_back({idx, w});
      }
    }
}

void FilterBank::check(int j) const {
  if (!contains(j))
    throw RangeError("block index " + std::to_string(j) + " outside [" +
                     std::to_string(j_min_) + ", " + std::to_string(j_max_) +
                     "]");
}

std::span<const double> FilterBank::multipliers(int j) const {
  check(j);
  return dense_[j - j_min_];
}

std::span<const FilterBank::Entry> FilterBank::support(int j) const {
  check(j);
  return sparse_[j - j_min_];
}

FilterBank build_filter_bank(const Grid& grid) { return FilterBank(grid); }

SpectralField dyadic_block(const SpectralField& f, int j,
                           const FilterBank& bank) {
  if (!(f.grid() == bank.grid()))
    throw DimensionError("field and filter bank grids differ");
  SpectralField out(f.grid());
  for (const auto& e : bank.support(j)) out[e.index] = e.weight * f[e.index];
  return out;
}

std::vector<double> block_norms(std::span<const WeightedField> fields,
                                const FilterBank& bank) {
  for (const auto& wf : fields)
    if (!(wf.field->grid() == bank.grid()))
      throw DimensionError("field and filter bank grids differ");
  std::vector<double> out;
  out.reserve(bank.j_max() - bank.j_min() + 1);
  for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
    double sum = 0.0;
    for (const auto& e : bank.support(j)) {
      double m = 0.0;
      for (const auto& wf : fields) m += wf.weight * std::norm((*wf.field)[e.index]);
      sum += e.weight * e.weight * m;
    }
    out.push_back(std::sqrt(sum));
  }
  return out;
}

std::vector<double> block_norms(const SpectralField& f, const FilterBank& bank) {
  const WeightedField fs[] = {{&f, 1.0}};
  return block_norms(fs, bank);
}

std::vector<double> block_norms(const VectorField& v, const FilterBank& bank) {
  const WeightedField fs[] = {{&v[0], 1.0}, {&v[1], 1.0}};
  return block_norms(fs, bank);
}

std::vector<double> block_norms(const SymTensorField& t,
                                const FilterBank& bank) {
  const WeightedField fs[] = {{&t.xx, 1.0}, {&t.xy, 2.0}, {&t.yy, 1.0}};
  return block_norms(fs, bank);
}

double besov_from_blocks(std::span<const double> blocks, double s, int j_min) {
  double best = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    best = std::max(best, std::exp2(s * (j_min + static_cast<int>(i))) * blocks[i]);
  return best;
}

double besov_norm(const SpectralField& f, double s, const FilterBank& bank) {
  return besov_from_blocks(block_norms(f, bank), s, bank.j_min());
}

double besov_norm(const VectorField& v, double s, const FilterBank& bank) {
  return besov_from_blocks(block_norms(v, bank), s, bank.j_min());
}

double besov_norm(const SymTensorField& t, double s, const FilterBank& bank) {
  return besov_from_blocks(block_norms(t, bank), s, bank.j_min());
}

double low_block_seminorm(const SpectralField& f, int j_cut,
                          const FilterBank& bank) {
  if (!bank.contains(j_cut))
    throw RangeError("cut block " + std::to_string(j_cut) + " outside the bank");
  const auto blocks = block_norms(f, bank);
  double best = 0.0;
  for (int j = bank.j_min(); j <= j_cut; ++j)
    best = std::max(best, std::exp2(-j) * blocks[j - bank.j_min()]);
  return best;
}

double gagliardo_nirenberg_theta(double s, double s1, double s2, double p) {
  if (!(p >= 2.0)) throw RangeError("Gagliardo-Nirenberg needs p >= 2");
  if (!(s2 > s1)) throw RangeError("Gagliardo-Nirenberg needs s2 > s1");
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double lhs = s + 2.0 * (0.5 - inv_p);
  const double theta = (lhs - s1) / (s2 - s1);
  if (theta < 0.0 || theta > 1.0)
    throw RangeError("no admissible theta in [0, 1]");
  // The scaling identity the exponent has to satisfy.
  const double rhs = s1 * (1.0 - theta) + theta * s2;
  if (std::abs(lhs - rhs) > 1e-12 * std::max(1.0, std::abs(lhs)))
    throw RangeError("theta violates the scaling identity");
  return theta;
}

double lp_norm(const RealField& g, double p) {
  const double cell = std::pow(g.grid().length() / g.grid().n(), 2);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : g.values()) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the maximum first so large p does not overflow.
  double m = 0.0;
  for (double v : g.values()) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : g.values()) sum += std::pow(std::abs(v) / m, p);
  return m * std::pow(cell * sum, 1.0 / p);
}

double gagliardo_nirenberg_ratio(const SpectralField& f, double s, double s1,
                                 double s2, double p) {
  const double theta = gagliardo_nirenberg_theta(s, s1, s2, p);
  const double num = lp_norm(inverse_transform(fractional_derivative(f, s)), p);
  const double a = l2_norm(fractional_derivative(f, s1));
  const double b = l2_norm(fractional_derivative(f, s2));
  return num / (std::pow(a, 1.0 - theta) * std::pow(b, theta));
}

}  // namespace odhl
