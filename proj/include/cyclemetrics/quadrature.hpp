#pragma once

// Adaptive Gauss-Kronrod (G7/K15) integration in one dimension, plus an
// iterated driver for nested integrals over simplex-like regions whose inner
// bounds depend on the outer variables.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cyclemetrics {

/// Change of variables applied before the Gauss-Kronrod panels are laid out.
enum class Transform {
  none,
  /// x = lo - ln(u), u in (exp(lo - hi), 1]; intended for hi = +inf.
  log_to_infinity,
  /// x = lo + t^2; removes an inverse square-root singularity at lo.
  sqrt_lo,
  /// x = hi - t^2; removes an inverse square-root singularity at hi.
  sqrt_hi,
};

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_depth = 48;
  int max_panels = 4000;
  Transform transform = Transform::none;
};

struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long evaluations = 0;
};

/// Tolerance not reached before the subdivision limit; carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadResult best, int level = 0)
      : std::runtime_error(what), best_(best), level_(level) {}
  const QuadResult& best() const noexcept { return best_; }
  int level() const noexcept { return level_; }

 private:
  QuadResult best_;
  int level_;
};

namespace detail {

// Abscissae and weights of the 15-point Kronrod extension of 7-point Gauss.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double err;
  int depth;
  bool operator<(const Panel& o) const { return err < o.err; }
};

template <class G>
Panel gk15(const G& g, double lo, double hi, int depth) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = g(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = g(center - dx);
    const double f2 = g(center + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  resk *= half;
  resg *= half;
  return {lo, hi, resk, std::abs(resk - resg), depth};
}

// Global adaptive bisection over the panels delimited by `cuts`.
template <class G>
QuadResult adapt(const G& g, std::vector<double> cuts, const QuadratureSpec& spec) {
  std::priority_queue<Panel> heap;
  QuadResult out;
  double total = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    Panel p = gk15(g, cuts[i], cuts[i + 1], 0);
    out.evaluations += 15;
    total += p.value;
    err += p.err;
    heap.push(p);
  }
  int splits = 0;
  while (!heap.empty()) {
    const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err <= target) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool unsplittable = !(mid > worst.lo && mid < worst.hi);
    if (worst.depth >= spec.max_depth || splits >= spec.max_panels || unsplittable) {
      out.value = total;
      out.err_estimate = err;
      throw QuadratureError("integrate_1d: tolerance " + std::to_string(target) +
                                " not reached, error estimate " + std::to_string(err),
                            out);
    }
    heap.pop();
    Panel left = gk15(g, worst.lo, mid, worst.depth + 1);
    Panel right = gk15(g, mid, worst.hi, worst.depth + 1);
    out.evaluations += 30;
    ++splits;
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    if (splits % 64 == 0) {
      // resum to keep the running totals from drifting
      auto copy = heap;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().err;
        copy.pop();
      }
    }
  }
  // final sum in a fixed order for reproducibility
  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  total = 0.0;
  err = 0.0;
  for (const auto& p : panels) {
    total += p.value;
    err += p.err;
  }
  out.value = total;
  out.err_estimate = err;
  return out;
}

inline std::vector<double> make_cuts(double lo, double hi, std::span<const double> breaks) {
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace detail

/// Integrates f over [lo, hi], splitting first at any `breaks` inside the
/// interval (points where f is known to lose smoothness). Breaks are given in
/// the original variable x regardless of the transform.
template <class F>
QuadResult integrate_1d(const F& f, double lo, double hi, const QuadratureSpec& spec,
                        std::span<const double> breaks = {}) {
  if (!(spec.abs_tol > 0.0) || spec.max_depth < 1) {
    throw std::invalid_argument("integrate_1d: abs_tol must be > 0 and max_depth >= 1");
  }
  if (std::isnan(lo) || std::isnan(hi)) {
    throw std::invalid_argument("integrate_1d: NaN bound");
  }
  if (hi == lo) return {};
  if (std::isinf(hi) && spec.transform != Transform::log_to_infinity) {
    throw std::invalid_argument("integrate_1d: infinite bound requires log_to_infinity");
  }
  if (!(hi > lo)) throw std::invalid_argument("integrate_1d: requires lo < hi");

  switch (spec.transform) {
    case Transform::none:
      return detail::adapt(f, detail::make_cuts(lo, hi, breaks), spec);
    case Transform::log_to_infinity: {
      const double ulo = std::isinf(hi) ? 0.0 : std::exp(lo - hi);
      auto g = [&](double u) {
        const double x = lo - std::log(u);
        return f(x) / u;
      };
      std::vector<double> ub;
      for (double b : breaks) ub.push_back(std::exp(lo - b));
      return detail::adapt(g, detail::make_cuts(ulo, 1.0, ub), spec);
    }
    case Transform::sqrt_lo: {
      auto g = [&](double t) { return 2.0 * t * f(lo + t * t); };
      std::vector<double> tb;
      for (double b : breaks) {
        if (b > lo) tb.push_back(std::sqrt(b - lo));
      }
      return detail::adapt(g, detail::make_cuts(0.0, std::sqrt(hi - lo), tb), spec);
    }
    case Transform::sqrt_hi: {
      auto g = [&](double t) { return 2.0 * t * f(hi - t * t); };
      std::vector<double> tb;
      for (double b : breaks) {
        if (b < hi) tb.push_back(std::sqrt(hi - b));
      }
      return detail::adapt(g, detail::make_cuts(0.0, std::sqrt(hi - lo), tb), spec);
    }
  }
  throw std::logic_error("integrate_1d: unknown transform");
}

/// One level of an iterated integral. `outer` holds the values of all
/// enclosing variables, outermost first.
struct NestedLevel {
  std::function<std::pair<double, double>(std::span<const double> outer)> bounds;
  std::function<std::vector<double>(std::span<const double> outer)> breaks = {};
  Transform transform = Transform::none;
};

/// Iterated adaptive integration of f(x_0, ..., x_{d-1}) with levels listed
/// outermost first. Each inner level runs at one tenth of the tolerance of the
/// level enclosing it. Empty ranges (hi <= lo) contribute zero.
QuadResult integrate_nested(const std::function<double(std::span<const double>)>& f,
                            std::span<const NestedLevel> levels, const QuadratureSpec& spec);

}  // namespace cyclemetrics
