#include <cmath>

#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/quadrature.hpp"
#include "cyclemetrics/specfun.hpp"
#include "doctest.h"

using namespace cyclemetrics;

namespace {

// -gamma - ln x - sum (-x)^k / (k k!), summed in long double until terms vanish
double e1_alternating_series(double x) {
  long double sum = 0.0L;
  long double term = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= -static_cast<long double>(x) / k;
    sum += term / k;
  }
  return static_cast<double>(-0.57721566490153286060651209L - std::log(static_cast<long double>(x)) -
                             sum);
}

// exp(-x) times the quadrature of exp(-s)/(x + s) over (0, inf)
double e1_quadrature(double x) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-16;
  spec.transform = Transform::log_to_infinity;
  return std::exp(-x) *
         integrate_1d([x](double s) { return std::exp(-s) / (x + s); }, 0.0, INFINITY, spec).value;
}

}  // namespace

TEST_CASE("exponential integral against oracles") {
  CHECK(exp_integral(1.0) == doctest::Approx(0.2193839344).epsilon(1e-10));
  for (double x : {0.01, 0.1, 0.5, 1.0, 1.49, 1.5, 1.51, 2.0, 3.0}) {
    CHECK(std::abs(exp_integral(x) / e1_alternating_series(x) - 1.0) < 1e-13);
  }
  CHECK(exp_integral(10.0) == doctest::Approx(4.15697e-6).epsilon(1e-5));
  for (double x : {1.5, 2.5, 5.0, 10.0, 20.0, 40.0}) {
    CHECK(std::abs(exp_integral(x) / e1_quadrature(x) - 1.0) < 1e-12);
  }
  CHECK(exp_integral(10.0) < std::exp(-10.0) / 10.0);
}

TEST_CASE("exponential integral properties") {
  for (double x = 0.1; x <= 20.0; x += 0.37) {
    const double h = 1e-5 * x;
    const double d = -(exp_integral(x + h) - exp_integral(x - h)) / (2 * h);
    CHECK(std::abs(d / (std::exp(-x) / x) - 1.0) < 1e-6);
    CHECK(exp_integral(x + 0.01) < exp_integral(x));
  }
  CHECK(std::abs(exp_integral(30.0) * 30.0 * std::exp(30.0) - 1.0) < 0.05);
  CHECK(std::abs(exp_integral(50.0) * 50.0 * std::exp(50.0) - 1.0) < 0.03);
  CHECK(exp_integral(1e-12) > 27.0);
  CHECK_THROWS_AS(exp_integral(0.0), DomainError);
  CHECK_THROWS_AS(exp_integral(-1.0), DomainError);
}

TEST_CASE("dilogarithm") {
  CHECK(dilog(0.0) == 0.0);
  CHECK(dilog(1.0) == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
  const double l3 = std::log(3.0);
  CHECK(std::abs(-kPi * kPi / 12 + l3 * l3 / 2 + dilog(1.0 / 3.0) - 0.147220676959) < 1e-12);
  for (double x = 0.05; x < 1.0; x += 0.05) {
    const double lhs = dilog(x) + dilog(1.0 - x);
    const double rhs = kPi * kPi / 6 - std::log(x) * std::log(1.0 - x);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
  // direct series where it converges fast
  for (double x : {-0.9, -0.6, -0.3, 0.2, 0.45}) {
    double s = 0.0;
    double p = 1.0;
    for (int k = 1; k < 2000; ++k) {
      p *= x;
      s += p / (static_cast<double>(k) * k);
    }
    CHECK(std::abs(dilog(x) - s) < 1e-13);
  }
  CHECK(dilog(-1.0) == doctest::Approx(-kPi * kPi / 12).epsilon(1e-14));
  CHECK_THROWS_AS(dilog(1.01), DomainError);
  CHECK_THROWS_AS(dilog(-1.5), DomainError);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(3) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  const HarmonicTable t(1000);
  CHECK(t.max_index() == 1000);
  CHECK(t[0] == 0.0);
  for (std::size_t m = 1; m <= 1000; ++m) {
    CHECK(std::abs(t[m] - t[m - 1] - 1.0 / m) < 1e-14);
    CHECK(t[m] > t[m - 1]);
  }
  CHECK(t[1000] == doctest::Approx(harmonic(1000)).epsilon(1e-15));
  CHECK_THROWS(t[1001]);
}
