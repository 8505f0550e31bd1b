#include <cmath>
#include <vector>

#include "cyclemetrics/densities.hpp"
#include "cyclemetrics/dickman.hpp"
#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/montecarlo.hpp"
#include "cyclemetrics/quadrature.hpp"
#include "cyclemetrics/semismooth.hpp"
#include "doctest.h"

using namespace cyclemetrics;

namespace {

double rho(double xi) { return dickman().rho1.value_or_zero(xi); }

std::vector<double> knots(double top, double scale) {
  std::vector<double> out;
  for (int k = 0; k <= 30; ++k) out.push_back(top - k * scale);
  return out;
}

// I_k over the full box (a, b]^k, which is k! times the ordered region.
double symmetric_box(int k, double a, double b) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.max_panels = 20000;
  std::vector<NestedLevel> levels(k);
  for (int i = 0; i < k; ++i) {
    levels[i].bounds = [a, b](std::span<const double>) { return std::pair{a, b}; };
    levels[i].breaks = [a, i](std::span<const double> o) {
      double s = 1.0;
      for (int j = 0; j < i; ++j) s -= o[j];
      return knots(s, a);
    };
  }
  auto f = [a, k](std::span<const double> v) {
    double s = 1.0;
    double p = 1.0;
    for (int i = 0; i < k; ++i) {
      s -= v[i];
      p *= v[i];
    }
    return rho(s / a) / p;
  };
  return integrate_nested(f, levels, spec).value;
}

SimConfig sim(long reps, std::uint64_t seed) {
  SimConfig c;
  c.n = 100000;
  c.reps = reps;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("single, double and triple integrals") {
  CHECK(std::abs(i_count(1, 1.0 / 3, 0.5) - 0.17604345) < 5e-9);
  CHECK(std::abs(i_count(2, 1.0 / 3, 0.5) - 0.08220098) < 5e-9);
  CHECK(std::abs(i_count(3, 0.25, 1.0 / 3) - 0.00396814) < 5e-9);
  CHECK(std::abs(j_cdf(1, 1.0 / 3, 0.5) - 0.22465184) < 5e-9);
  CHECK(std::abs(j_cdf(2, 0.25, 0.5) - 0.29196647) < 5e-9);
  CHECK(std::abs(j_cdf(3, 0.2, 0.2) - 0.00035472) < 5e-9);
  CHECK(std::abs(j_cdf(1, 1.0 / 3, 1.0) - 0.85277932) < 5e-9);
  CHECK(i0(0.5) == dickman().rho1(2.0));
  for (int k = 1; k <= 3; ++k) {
    CHECK(i_count(k, 0.2, 0.2) == 0.0);
    CHECK(j_cdf(k, 0.2, 0.2) == dickman().rho1(5.0));
  }
}

TEST_CASE("ordered region equals symmetric box over k factorial") {
  CHECK(std::abs(i_count(2, 1.0 / 3, 0.5) - symmetric_box(2, 1.0 / 3, 0.5) / 2) < 1e-9);
  CHECK(std::abs(i_count(2, 0.2, 0.45) - symmetric_box(2, 0.2, 0.45) / 2) < 1e-9);
  CHECK(std::abs(i_count(3, 0.25, 1.0 / 3) - symmetric_box(3, 0.25, 1.0 / 3) / 6) < 1e-8);
  CHECK(std::abs(i_count(3, 0.2, 0.3) - symmetric_box(3, 0.2, 0.3) / 6) < 1e-8);
}

TEST_CASE("boundary identities") {
  const auto& d = dickman();
  for (double a : {0.15, 0.2, 0.25, 0.3, 1.0 / 3}) {
    CHECK(std::abs(j_cdf(1, a, 1.0) - d.rho2(1.0 / a)) < 1e-8);
    CHECK(std::abs(j_cdf(2, a, 1.0) - d.rho3(1.0 / a)) < 1e-8);
    CHECK(std::abs(j_cdf(3, a, 1.0) - d.rho4(1.0 / a)) < 1e-8);
  }
  CHECK(std::abs(j_cdf(1, 0.45, 1.0) - d.rho2(1.0 / 0.45)) < 1e-8);
}

TEST_CASE("maximum of I1(a, 1)") {
  double best = 0.0;
  double arg = 0.0;
  for (int i = 200; i <= 600; ++i) {
    const double a = i * 1e-3;
    const double v = i_count(1, a, 1.0);
    if (v > best) {
      best = v;
      arg = a;
    }
  }
  CHECK(std::abs(arg - 0.3775) <= 1e-3);
  CHECK(std::abs(best - 0.8285) < 5e-5);
  CHECK(std::abs(i_count(1, 0.3775, 1.0) - 0.8285) < 5e-5);
}

TEST_CASE("monotonicity and nesting") {
  for (double a : {0.1, 0.2, 0.25, 0.3}) {
    double prev_b = -1.0;
    double prev_i = -1.0;
    for (double b = a; b <= 0.5; b += 0.04) {
      const double j1 = j_cdf(1, a, b);
      const double j2 = j_cdf(2, a, b);
      const double j3 = j_cdf(3, a, b);
      CHECK(j1 >= dickman().rho1(1.0 / a) - 1e-12);
      CHECK(j2 >= j1 - 1e-10);
      CHECK(j3 >= j2 - 1e-9);
      CHECK(j3 <= 1.0 + 1e-9);
      CHECK(j1 >= prev_b - 1e-12);
      const double i1 = i_count(1, a, b);
      CHECK(i1 >= prev_i - 1e-12);
      prev_b = j1;
      prev_i = i1;
    }
  }
  for (double b : {0.35, 0.5, 0.8}) {
    double prev = -1.0;
    for (double a = 0.1; a <= 1.0 / 3; a += 0.03) {
      const double j = j_cdf(2, a, b);
      CHECK(j >= prev - 1e-10);
      prev = j;
    }
  }
}

TEST_CASE("K and L functionals") {
  const auto& d = dickman();
  CHECK(k0(0.25) == d.rho2(4.0));
  CHECK(k1(0.2, 0.2).value == 0.0);
  CHECK_FALSE(k1(0.2, 0.2).provisional);
  CHECK(k1(0.25, 1.0 / 3).provisional);
  CHECK(l1(0.25, 1.0 / 3).provisional);
  CHECK_FALSE(l1(0.25, 0.5).provisional);
  CHECK(std::abs(l1(1.0 / 3, 1.0 / 3).value - 0.85277932) < 5e-9);
  CHECK(std::abs(l1(0.25, 0.5).value - 0.98511365) < 5e-9);
  for (double a : {0.1, 0.2, 0.25, 0.3}) {
    CHECK(std::abs(l1(a, a).value - d.rho2(1.0 / a)) < 1e-12);
    CHECK(std::abs(l1(a, 0.5).value - d.rho3(1.0 / a)) < 1e-9);
    // b = 1/2 makes K1 the two-cycle count I2(a, 1)
    CHECK(std::abs(k1(a, 0.5).value - (j_cdf(2, a, 1.0) - j_cdf(1, a, 1.0))) < 1e-9);
  }
  CHECK_THROWS_AS(k1(0.4, 0.45), DomainError);
  CHECK_THROWS_AS(k1(0.3, 0.2), DomainError);
  CHECK_THROWS_AS(k1(0.3, 0.6), DomainError);
  CHECK_THROWS_AS(k0(0.5), DomainError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(i_count(0, 0.2, 0.3), DomainError);
  CHECK_THROWS_AS(i_count(4, 0.2, 0.3), DomainError);
  CHECK_THROWS_AS(i_count(1, 0.3, 0.2), DomainError);
  CHECK_THROWS_AS(i_count(1, 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(i_count(1, 0.2, 1.1), DomainError);
  CHECK_THROWS_AS(i_count(2, 0.6, 0.7), DomainError);
  CHECK_THROWS_AS(j_cdf(3, 0.4, 0.5), DomainError);
  CHECK_THROWS_AS(i0(0.0), DomainError);
  CHECK_THROWS_AS(ekk_box3(0.2, 0.3, 0.6), ValidityError);
  CHECK_THROWS_AS(ekk_box3(0.3, 0.2, 0.4), DomainError);
  CHECK_THROWS_AS(ekk_box4(0.2, 0.25, 0.3, 0.4), ValidityError);
  CHECK_THROWS_AS(ekk_box4(0.3, 0.3, 0.3, 0.3), DomainError);
}

TEST_CASE("box probabilities: identities") {
  CHECK(ekk_box3(0.2, 0.2, 0.5) == 0.0);
  CHECK(ekk_box4(0.1, 0.1, 0.3, 0.4) == 0.0);
  CHECK(ekk_box4(1.0 / 6, 0.2, 0.25, 0.3) <= ekk_box4(1.0 / 6, 0.2, 0.25, 0.33));
  // alternate order: x outer over (a, c], y inner over (a, min(x, b)]
  const double a = 1.0 / 6;
  const double b = 0.2;
  const double c = 0.25;
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  const NestedLevel levels[] = {
      {[&](std::span<const double>) { return std::pair{a, c}; },
       [&](std::span<const double>) { return std::vector<double>{b}; }},
      {[&](std::span<const double> o) { return std::pair{a, std::min(o[0], b)}; },
       [&](std::span<const double> o) { return knots(1.0 - o[0], a); }},
  };
  const double alt = integrate_nested(
      [&](std::span<const double> v) { return rho((1.0 - v[0] - v[1]) / a) / (v[0] * v[1]); },
      levels, spec).value;
  CHECK(std::abs(ekk_box3(a, b, c) - alt) < 1e-9);
}

TEST_CASE("box probabilities against simulation") {
  const auto e3 = parse_event("L3<=1/5,L2>1/5,L2<=1/4,L1<=1/3");
  const auto m3 = estimate_event(e3, sim(200000, 3));
  CHECK(std::abs(m3.mean - ekk_box3(0.2, 0.25, 1.0 / 3)) < 3 * m3.std_err);

  const auto e4 = parse_event("L4<=1/6,L3>1/6,L3<=1/5,L2<=1/4,L1<=1/3");
  const auto m4 = estimate_event(e4, sim(200000, 4));
  CHECK(std::abs(m4.mean - ekk_box4(1.0 / 6, 0.2, 0.25, 1.0 / 3)) < 3 * m4.std_err);
}

TEST_CASE("second mixed partials reproduce the bivariate densities") {
  const double h = 1e-3;
  auto mixed = [h](auto F, double a, double b) {
    return (F(a + h, b + h) - F(a + h, b - h) - F(a - h, b + h) + F(a - h, b - h)) / (4 * h * h);
  };
  const double pts[][2] = {{0.2, 0.3}, {0.25, 0.4}, {0.25, 0.45}, {0.15, 0.35}, {0.22, 0.27}};
  for (const auto& p : pts) {
    const double a = p[0];
    const double b = p[1];
    CAPTURE(a);
    CAPTURE(b);
    const double d1 = mixed([](double x, double y) { return j_cdf(1, x, y); }, a, b);
    CHECK(std::abs(d1 / f12(b, a) - 1.0) < 1e-2);
    const double d2 = mixed([](double x, double y) { return j_cdf(2, x, y); }, a, b);
    CHECK(std::abs(d2 / f13(b, a) - 1.0) < 1e-2);
  }
  const double pts3[][2] = {{0.2, 0.25}, {0.15, 0.3}, {0.25, 0.3}, {0.2, 0.35}, {0.1, 0.2}};
  for (const auto& p : pts3) {
    const double a = p[0];
    const double b = p[1];
    CAPTURE(a);
    CAPTURE(b);
    const double d = mixed([](double x, double y) { return l1(x, y).value; }, a, b);
    CHECK(std::abs(d / f23(b, a) - 1.0) < 1e-2);
  }
}

TEST_CASE("query dispatch") {
  auto q = parse_prob_kind("i2");
  CHECK(q.kind == ProbKind::i_count);
  CHECK(q.rank == 2);
  CHECK(arity(q) == 2);
  q.args = {1.0 / 3, 0.5, 0, 0};
  CHECK(evaluate(q).value == i_count(2, 1.0 / 3, 0.5));
  auto k = parse_prob_kind("k1");
  k.args = {0.25, 1.0 / 3, 0, 0};
  CHECK(evaluate(k).provisional);
  CHECK(arity(parse_prob_kind("box4")) == 4);
  CHECK(arity(parse_prob_kind("box3")) == 3);
  CHECK(arity(parse_prob_kind("i0")) == 1);
  CHECK(arity(parse_prob_kind("k0")) == 1);
  CHECK(parse_prob_kind("j3").kind == ProbKind::j_cdf);
  CHECK_THROWS_AS(parse_prob_kind("i4"), DomainError);
  CHECK_THROWS_AS(parse_prob_kind("x"), DomainError);
}
