#pragma once

#include <cstddef>
#include <vector>

namespace cyclemetrics {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// E(x) = integral of exp(-t)/t over (x, inf), for x > 0.
/// Throws DomainError for x <= 0.
double exp_integral(double x);

/// Dilogarithm Li2(x) = sum x^k/k^2 for |x| <= 1.
double dilog(double x);

/// H_m = 1 + 1/2 + ... + 1/m, H_0 = 0.
double harmonic(std::size_t m);

/// Harmonic numbers H_0..H_max, filled once at construction.
class HarmonicTable {
 public:
  explicit HarmonicTable(std::size_t max_index);

  double operator[](std::size_t m) const { return values_.at(m); }
  std::size_t max_index() const { return values_.size() - 1; }

 private:
  std::vector<double> values_;
};

}  // namespace cyclemetrics
