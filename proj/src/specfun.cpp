#include "cyclemetrics/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cyclemetrics/errors.hpp"

namespace cyclemetrics {

namespace {

constexpr double kSeriesCrossover = 1.5;

double exp_integral_series(double x) {
  // -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
  double term = 1.0;  // (-x)^k / k!
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

// Modified Lentz evaluation of exp(-x) / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
double exp_integral_cf(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

double dilog_series(double x) {
  double pk = x;
  double sum = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double add = pk / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum) || add == 0.0) break;
    pk *= x;
  }
  return sum;
}

}  // namespace

double exp_integral(double x) {
  if (!(x > 0.0)) {
    throw DomainError("exp_integral: requires x > 0, got " + std::to_string(x));
  }
  if (std::isinf(x)) return 0.0;
  return x < kSeriesCrossover ? exp_integral_series(x) : exp_integral_cf(x);
}

double dilog(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("dilog: requires |x| <= 1, got " + std::to_string(x));
  }
  if (x == 1.0) return kPi * kPi / 6.0;
  if (x == 0.0) return 0.0;
  if (x > 0.5) {
    // Euler reflection
    return kPi * kPi / 6.0 - std::log(x) * std::log1p(-x) - dilog_series(1.0 - x);
  }
  if (x < -0.5) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - ln(1-x)^2 / 2, with x/(x-1) in (1/3, 1/2]
    const double l = std::log1p(-x);
    return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  return dilog_series(x);
}

double harmonic(std::size_t m) {
  if (m <= 64) {
    double h = 0.0;
    for (std::size_t k = m; k >= 1; --k) h += 1.0 / static_cast<double>(k);
    return h;
  }
  // Euler-Maclaurin; the first omitted term is below 1e-17 for m > 64
  const double x = static_cast<double>(m);
  const double r = 1.0 / (x * x);
  return std::log(x) + kEulerGamma + 0.5 / x -
         r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r / 240)));
}

HarmonicTable::HarmonicTable(std::size_t max_index) : values_(max_index + 1, 0.0) {
  for (std::size_t k = 1; k <= max_index; ++k) values_[k] = harmonic(k);
}

}  // namespace cyclemetrics
