#include "cyclemetrics/moments.hpp"

#include <cmath>

#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/specfun.hpp"

namespace cyclemetrics {

namespace {

// exp(-E(x)) at x = -ln(u); vanishes as u -> 1 where E blows up
double decay(double u) {
  const double x = -std::log(u);
  return std::exp(-exp_integral(x));
}

void check_pair(int r, int s) {
  const bool ok = (r == 1 && (s == 2 || s == 3 || s == 4)) || (r == 2 && s == 3);
  if (!ok) throw DomainError("cross_moment: (r, s) must be (1,2), (1,3), (1,4) or (2,3)");
}

std::pair<double, double> unit(std::span<const double>) { return {0.0, 1.0}; }

std::pair<double, double> above_last(std::span<const double> o) { return {o.back(), 1.0}; }

}  // namespace

QuadratureSpec default_moment_spec(int dimension) {
  QuadratureSpec s;
  s.abs_tol = dimension <= 2 ? 1e-11 : dimension == 3 ? 1e-10 : 1e-9;
  s.max_panels = 20000;
  return s;
}

double moment(int r, int h) {
  if (r < 1 || r > 4 || h < 1 || h > 2) {
    throw DomainError("moment: requires rank 1..4 and height 1..2");
  }
  // (1 / (h! (r-1)!)) * integral over x > 0 of x^(h-1) E^(r-1) exp(-E - x)
  auto f = [r, h](double x) {
    const double e = exp_integral(x);
    return std::pow(x, h - 1) * std::pow(e, r - 1) * std::exp(-e - x);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.max_panels = 20000;
  spec.transform = Transform::log_to_infinity;
  const double integral = integrate_1d(f, 0.0, INFINITY, spec).value;
  const double factorial[] = {1.0, 1.0, 2.0, 6.0};
  return integral / (factorial[h] * factorial[r - 1]);
}

double cross_moment(int r, int s) {
  check_pair(r, s);
  const int dim = r == 1 ? s : 3;
  return cross_moment(r, s, default_moment_spec(dim));
}

double cross_moment(int r, int s, const QuadratureSpec& spec) {
  check_pair(r, s);
  // With u = exp(-x) for each variable the exponential factors become the
  // Lebesgue measure on 0 < u1 < u2 < ... < 1, leaving exp(-E) of the
  // innermost variable and the 1/x weights.
  const NestedLevel l0{unit};
  const NestedLevel li{above_last};
  auto neg_log = [](double u) { return -std::log(u); };
  if (r == 1 && s == 2) {
    const NestedLevel levels[] = {l0, li};
    auto f = [](std::span<const double> v) { return decay(v[1]); };
    return 0.5 * integrate_nested(f, levels, spec).value;
  }
  if (r == 1 && s == 3) {
    const NestedLevel levels[] = {l0, li, li};
    auto f = [&](std::span<const double> v) { return decay(v[2]) / neg_log(v[1]); };
    return 0.5 * integrate_nested(f, levels, spec).value;
  }
  if (r == 1 && s == 4) {
    const NestedLevel levels[] = {l0, li, li, li};
    auto f = [&](std::span<const double> v) {
      return decay(v[3]) / (neg_log(v[1]) * neg_log(v[2]));
    };
    return 0.5 * integrate_nested(f, levels, spec).value;
  }
  const NestedLevel levels[] = {l0, li, li};
  auto f = [&](std::span<const double> v) { return decay(v[2]) / neg_log(v[0]); };
  return 0.5 * integrate_nested(f, levels, spec).value;
}

double correlation(int r, int s) {
  const double c = cross_moment(r, s);
  const double mr = moment(r, 1);
  const double ms = moment(s, 1);
  const double vr = moment(r, 2) - mr * mr;
  const double vs = moment(s, 2) - ms * ms;
  return (c - mr * ms) / std::sqrt(vr * vs);
}

}  // namespace cyclemetrics
