#pragma once

// Homogeneous dyadic decomposition on the periodic grid and the Besov
// quantities built from it. Block j keeps the frequencies with
// 3/4 <= 2^{-j}|xi| <= 8/3, weighted by the smooth radial profile phi.

#include <cstdint>
#include <span>
#include <vector>

#include "odhl/spectral.hpp"

namespace odhl {

// A field entering a block norm, with a multiplicity weight (2 for the
// off-diagonal tensor entry).
struct WeightedField {
  const SpectralField* field;
  double weight = 1.0;
};

class FilterBank {
 public:
  struct Entry {
    std::uint32_t index;
    double weight;
  };

  explicit FilterBank(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  bool contains(int j) const { return j >= j_min_ && j <= j_max_; }

  // phi(2^{-j} xi) sampled on the grid, dense in storage order.
  std::span<const double> multipliers(int j) const;
  // Nonzero entries of multipliers(j).
  std::span<const Entry> support(int j) const;

  // Radial profile phi: C^infinity, supported in (3/4, 8/3), and
  // sum_j phi(2^{-j} r) = 1 for every r > 0.
  static double profile(double r);

 private:
  void check(int j) const;

  Grid grid_;
  int j_min_ = 0, j_max_ = -1;
  std::vector<std::vector<double>> dense_;
  std::vector<std::vector<Entry>> sparse_;
};

FilterBank build_filter_bank(const Grid& grid);

// Delta_j f = F^{-1}(phi(2^{-j} .) f_hat). The mean mode is dropped.
SpectralField dyadic_block(const SpectralField& f, int j,
                           const FilterBank& bank);

// ||Delta_j (fields)||_{L^2} for every j in the bank, indexed from j_min.
std::vector<double> block_norms(std::span<const WeightedField> fields,
                                const FilterBank& bank);
std::vector<double> block_norms(const SpectralField& f, const FilterBank& bank);
std::vector<double> block_norms(const VectorField& v, const FilterBank& bank);
std::vector<double> block_norms(const SymTensorField& t,
                                const FilterBank& bank);

// sup_j 2^{js} ||Delta_j f||_{L^2}
double besov_norm(const SpectralField& f, double s, const FilterBank& bank);
double besov_norm(const VectorField& v, double s, const FilterBank& bank);
double besov_norm(const SymTensorField& t, double s, const FilterBank& bank);
double besov_from_blocks(std::span<const double> blocks, double s, int j_min);

// sup_{j <= j_cut} 2^{-j} ||Delta_j f||_{L^2}
double low_block_seminorm(const SpectralField& f, int j_cut,
                          const FilterBank& bank);

// Interpolation exponent theta solving s + 2(1/2 - 1/p) = s1 (1 - theta) +
// theta s2. Pass p = infinity for the L^infinity endpoint.
double gagliardo_nirenberg_theta(double s, double s1, double s2, double p);

// ||g||_{L^p} on the torus, (L/n)^2 sum |g|^p to the power 1/p.
double lp_norm(const RealField& g, double p);

// ||Lambda^s f||_{L^p} / (||Lambda^{s1} f||^{1-theta} ||Lambda^{s2} f||^theta)
double gagliardo_nirenberg_ratio(const SpectralField& f, double s, double s1,
                                 double s2, double p);

}  // namespace odhl
