#include <cmath>
#include <vector>

#include "cyclemetrics/quadrature.hpp"
#include "doctest.h"

using namespace cyclemetrics;

TEST_CASE("one-dimensional integrals") {
  QuadratureSpec spec;
  CHECK(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, spec).value ==
        doctest::Approx(1.0).epsilon(1e-15));
  const auto r = integrate_1d([](double x) { return std::sin(x); }, 0.0, 3.0, spec);
  CHECK(std::abs(r.value - (1.0 - std::cos(3.0))) < 1e-12);
  CHECK(r.err_estimate >= 0.0);
  CHECK(r.evaluations > 0);
  CHECK(integrate_1d([](double) { return 1.0; }, 2.0, 2.0, spec).value == 0.0);
}

TEST_CASE("semi-infinite range via log map") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.transform = Transform::log_to_infinity;
  CHECK(std::abs(integrate_1d([](double x) { return std::exp(-x); }, 0.0, INFINITY, spec).value -
                 1.0) < 1e-12);
  CHECK(std::abs(integrate_1d([](double x) { return std::exp(-x); }, 1.0, INFINITY, spec).value -
                 std::exp(-1.0)) < 1e-12);
  QuadratureSpec plain;
  CHECK_THROWS_AS(integrate_1d([](double) { return 1.0; }, 0.0, INFINITY, plain),
                  std::invalid_argument);
}

TEST_CASE("square-root endpoint transforms") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.transform = Transform::sqrt_lo;
  CHECK(std::abs(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, spec).value -
                 2.0) < 1e-12);
  spec.transform = Transform::sqrt_hi;
  CHECK(std::abs(
            integrate_1d([](double x) { return 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0, spec).value -
            2.0) < 1e-12);
}

TEST_CASE("breakpoints restore accuracy for kinks") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  const double breaks[] = {0.3};
  auto f = [](double x) { return std::abs(x - 0.3); };
  const auto with = integrate_1d(f, 0.0, 1.0, spec, breaks);
  const auto without = integrate_1d(f, 0.0, 1.0, spec);
  const double exact = 0.5 * (0.09 + 0.49);
  CHECK(std::abs(with.value - exact) < 1e-14);
  CHECK(std::abs(without.value - exact) < 1e-12);
  CHECK(with.evaluations < without.evaluations);
}

TEST_CASE("linearity") {
  QuadratureSpec spec;
  auto f = [](double x) { return std::exp(-x * x) / (1.0 + x); };
  const double a = integrate_1d(f, 0.0, 2.0, spec).value;
  const double b = integrate_1d([&](double x) { return 3.5 * f(x); }, 0.0, 2.0, spec).value;
  CHECK(std::abs(b - 3.5 * a) < 1e-9);
}

TEST_CASE("nested integral of 1/(xy) over the worked-example triangle") {
  // integral over 1/3 < y < x < 1/2 of dy dx / (x y) = ln(3/2)^2 / 2
  const double exact = 0.5 * std::pow(std::log(1.5), 2);
  const double exact_a = (1.0 - std::log(2.0)) - exact;
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;

  // iterated 1-D calls
  const double iterated =
      integrate_1d(
          [&](double x) {
            return integrate_1d([x](double y) { return 1.0 / (x * y); }, 1.0 / 3.0, x, spec).value;
          },
          1.0 / 3.0, 0.5, spec)
          .value;
  // nested driver
  const NestedLevel levels[] = {
      {[](std::span<const double>) { return std::pair{1.0 / 3.0, 0.5}; }},
      {[](std::span<const double> o) { return std::pair{1.0 / 3.0, o[0]}; }},
  };
  const double nested =
      integrate_nested([](std::span<const double> v) { return 1.0 / (v[0] * v[1]); }, levels, spec)
          .value;
  CHECK(std::abs(iterated - exact) < 1e-12);
  CHECK(std::abs(nested - exact) < 1e-12);
  CHECK(std::abs(nested - iterated) < 1e-12);
  CHECK(std::abs((1.0 - std::log(2.0)) - nested - 0.224651842493) < 1e-12);
  CHECK(std::abs(exact_a - 0.224651842493) < 1e-12);
}

TEST_CASE("nested volumes of simplices") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  auto one = [](std::span<const double>) { return 1.0; };
  for (std::size_t d = 1; d <= 4; ++d) {
    std::vector<NestedLevel> levels(d);
    levels[0].bounds = [](std::span<const double>) { return std::pair{0.0, 1.0}; };
    for (std::size_t k = 1; k < d; ++k) {
      levels[k].bounds = [](std::span<const double> o) { return std::pair{0.0, o.back()}; };
    }
    double fact = 1.0;
    for (std::size_t k = 2; k <= d; ++k) fact *= static_cast<double>(k);
    CHECK(std::abs(integrate_nested(one, levels, spec).value - 1.0 / fact) < 1e-12);
  }
  // empty inner ranges contribute nothing
  const NestedLevel empty[] = {
      {[](std::span<const double>) { return std::pair{0.0, 1.0}; }},
      {[](std::span<const double> o) { return std::pair{o[0] + 1.0, 0.5}; }},
  };
  CHECK(integrate_nested(one, empty, spec).value == 0.0);
  CHECK_THROWS_AS(integrate_nested(one, std::span<const NestedLevel>{}, spec),
                  std::invalid_argument);
}

TEST_CASE("failure carries the best estimate and the level") {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.max_depth = 3;
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  try {
    integrate_1d(f, 0.0, 1.0, spec);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best().value > 1.5);
    CHECK(e.best().value < 2.0);
    CHECK(e.best().err_estimate > 0.0);
    CHECK(e.level() == 0);
  }
  const NestedLevel levels[] = {
      {[](std::span<const double>) { return std::pair{0.5, 1.0}; }},
      {[](std::span<const double>) { return std::pair{0.0, 1.0}; }},
  };
  try {
    integrate_nested([](std::span<const double> v) { return 1.0 / std::sqrt(v[1]); }, levels,
                     spec);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.level() == 2);
  }
  QuadratureSpec bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(integrate_1d(f, 0.0, 1.0, bad), std::invalid_argument);
  CHECK_THROWS_AS(integrate_1d(f, 1.0, 0.0, QuadratureSpec{}), std::invalid_argument);
}
