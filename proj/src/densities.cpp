#include "cyclemetrics/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "cyclemetrics/dickman.hpp"
#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/parallel.hpp"

namespace cyclemetrics {

namespace {

constexpr int kMaxKnots = 24;

double rho(double xi) { return dickman().rho1.value_or_zero(xi); }

double sigma(double xi) { return dickman().sigma.value_or_zero(xi); }

// Points x in (lo, hi) where (top - x) / scale is a positive integer.
std::vector<double> knots(double top, double scale, double lo, double hi) {
  std::vector<double> out;
  for (int k = 1; k <= kMaxKnots; ++k) {
    const double x = top - k * scale;
    if (x <= lo) break;
    if (x < hi) out.push_back(x);
  }
  return out;
}

void require_simplex(std::span<const double> c, const char* name) {
  double sum = 0.0;
  double prev = 1.0;
  for (double v : c) {
    if (!(v > 0.0 && v < prev)) {
      throw DomainError(std::string(name) + ": coordinates must satisfy 1 > x > y > z > w > 0");
    }
    prev = v;
    sum += v;
  }
  if (!(sum < 1.0)) throw DomainError(std::string(name) + ": coordinate sum must be < 1");
}

// Unchecked kernels; callers guarantee the ordering.
double f12_kernel(double x, double y) { return rho((1.0 - x - y) / y) / (x * y); }

double f123_kernel(double x, double y, double z) {
  return rho((1.0 - x - y - z) / z) / (x * y * z);
}

double f13_kernel(double x, double z, const QuadratureSpec& spec) {
  const double hi = std::min(x, 1.0 - x - z);
  if (!(hi > z)) return 0.0;
  const auto br = knots(1.0 - x - z, z, z, hi);
  auto g = [&](double y) { return f123_kernel(x, y, z); };
  return integrate_1d(g, z, hi, spec, br).value;
}

double f14_kernel(double x, double w, const QuadratureSpec& spec) {
  const double zhi = std::min({x, 1.0 / 3.0, 0.5 * (1.0 - x - w)});
  if (!(zhi > w)) return 0.0;
  const NestedLevel levels[] = {
      {[&](std::span<const double>) { return std::pair{w, zhi}; },
       [&](std::span<const double>) {
         std::vector<double> br;
         for (int k = 0; k <= kMaxKnots; ++k) {
           br.push_back(0.5 * (1.0 - x - w - k * w));
           br.push_back(1.0 - 2.0 * x - w - k * w);
         }
         return br;
       }},
      {[&](std::span<const double> o) {
         return std::pair{o[0], std::min(x, 1.0 - x - o[0] - w)};
       },
       [&](std::span<const double> o) {
         return knots(1.0 - x - o[0] - w, w, o[0], std::min(x, 1.0 - x - o[0] - w));
       }},
  };
  auto f = [&](std::span<const double> v) {
    const double z = v[0];
    const double y = v[1];
    return rho((1.0 - x - y - z - w) / w) / (x * y * z * w);
  };
  return integrate_nested(f, levels, spec).value;
}

double f23_kernel(double y, double z, const QuadratureSpec& spec) {
  const double hi = 1.0 - y - z;
  if (!(hi > y)) return 0.0;
  const auto br = knots(1.0 - y - z, z, y, hi);
  auto g = [&](double x) { return f123_kernel(x, y, z); };
  return integrate_1d(g, y, hi, spec, br).value;
}

double g12_kernel(double x, double y) {
  return sigma((1.0 - x - y) / y) / (4.0 * x * y * std::sqrt(y));
}

constexpr double kEdge = 1e-12;

}  // namespace

QuadratureSpec default_density_spec() {
  QuadratureSpec s;
  s.abs_tol = 1e-11;
  s.rel_tol = 1e-11;
  s.max_panels = 20000;
  return s;
}

double f1(double x) {
  const double c[] = {x};
  require_simplex(c, "f1");
  return rho((1.0 - x) / x) / x;
}

double f12(double x, double y) {
  const double c[] = {x, y};
  require_simplex(c, "f12");
  return f12_kernel(x, y);
}

double f123(double x, double y, double z) {
  const double c[] = {x, y, z};
  require_simplex(c, "f123");
  return f123_kernel(x, y, z);
}

double f1234(double x, double y, double z, double w) {
  const double c[] = {x, y, z, w};
  require_simplex(c, "f1234");
  return rho((1.0 - x - y - z - w) / w) / (x * y * z * w);
}

double f_ranked(std::span<const double> c) {
  switch (c.size()) {
    case 1: return f1(c[0]);
    case 2: return f12(c[0], c[1]);
    case 3: return f123(c[0], c[1], c[2]);
    case 4: return f1234(c[0], c[1], c[2], c[3]);
    default: throw DomainError("f_ranked: arity must be 1..4");
  }
}

double f2(double y, const QuadratureSpec& spec) {
  if (!(y > 0.0 && y < 0.5)) throw DomainError("f2: requires 0 < y < 1/2");
  const double hi = 1.0 - y;
  auto g = [&](double x) { return f12_kernel(x, y); };
  return integrate_1d(g, y, hi, spec, knots(1.0 - y, y, y, hi)).value;
}

double f13(double x, double z, const QuadratureSpec& spec) {
  if (!(x > 0.0 && x < 1.0 && z > 0.0 && z <= x && z <= 0.5 * (1.0 - x))) {
    throw DomainError("f13: requires 0 < z <= min(x, (1 - x)/2), 0 < x < 1");
  }
  return f13_kernel(x, z, spec);
}

double f14(double x, double w, const QuadratureSpec& spec) {
  if (!(x > 0.0 && x < 1.0 && w > 0.0 && w <= x && w <= (1.0 - x) / 3.0)) {
    throw DomainError("f14: requires 0 < w <= min(x, (1 - x)/3), 0 < x < 1");
  }
  return f14_kernel(x, w, spec);
}

double f23(double y, double z, const QuadratureSpec& spec) {
  if (!(z > 0.0 && z <= 1.0 / 3.0 && z <= y && y <= 0.5 * (1.0 - z))) {
    throw DomainError("f23: requires 0 < z <= 1/3, z <= y <= (1 - z)/2");
  }
  return f23_kernel(y, z, spec);
}

double g1(double x) {
  if (!(x > 0.0 && x < 1.0)) throw DomainError("g1: requires 0 < x < 1");
  return sigma((1.0 - x) / x) / (2.0 * x * std::sqrt(x));
}

double g12(double x, double y) {
  const double c[] = {x, y};
  require_simplex(c, "g12");
  return g12_kernel(x, y);
}

double g1234(double x, double y, double z, double w) {
  const double c[] = {x, y, z, w};
  require_simplex(c, "g1234");
  return sigma((1.0 - x - y - z - w) / w) / (16.0 * x * y * z * w * std::sqrt(w));
}

double g_ranked(std::span<const double> c) {
  switch (c.size()) {
    case 1: return g1(c[0]);
    case 2: return g12(c[0], c[1]);
    case 4: return g1234(c[0], c[1], c[2], c[3]);
    default: throw DomainError("g_ranked: arity must be 1, 2 or 4");
  }
}

GridDensity parse_grid_density(const std::string& name) {
  if (name == "f12") return GridDensity::f12;
  if (name == "f13") return GridDensity::f13;
  if (name == "f14") return GridDensity::f14;
  if (name == "f23") return GridDensity::f23;
  if (name == "g12") return GridDensity::g12;
  throw DomainError("unknown density '" + name + "' (expected f12, f13, f14, f23, g12)");
}

std::string to_string(GridDensity d) {
  switch (d) {
    case GridDensity::f12: return "f12";
    case GridDensity::f13: return "f13";
    case GridDensity::f14: return "f14";
    case GridDensity::f23: return "f23";
    case GridDensity::g12: return "g12";
  }
  return "?";
}

Grid density_grid(GridDensity density, double step, int threads) {
  if (!(step > 0.0 && step <= 0.1)) throw DomainError("grid: step must be in (0, 0.1]");
  Grid grid{density, step, kGridClamp, "x", "y", {}};

  // plotting domain: 0 <= s <= s_max, lo(s) <= t <= hi(s), with t the first
  // output coordinate and s the second
  double s_max = 0.5;
  auto t_lo = [](double s) { return s; };
  std::function<double(double)> t_hi = [](double s) { return 1.0 - s; };
  switch (density) {
    case GridDensity::f12:
    case GridDensity::g12: break;
    case GridDensity::f13:
      grid.second = "z";
      s_max = 1.0 / 3.0;
      t_hi = [](double s) { return 1.0 - 2.0 * s; };
      break;
    case GridDensity::f14:
      grid.second = "w";
      s_max = 0.25;
      t_hi = [](double s) { return 1.0 - 3.0 * s; };
      break;
    case GridDensity::f23:
      grid.first = "y";
      grid.second = "z";
      s_max = 1.0 / 3.0;
      t_hi = [](double s) { return 0.5 * (1.0 - s); };
      break;
  }

  std::vector<std::pair<double, double>> lattice;
  const int ns = static_cast<int>(std::floor(s_max / step + kEdge));
  const int nt = static_cast<int>(std::floor(1.0 / step + kEdge));
  for (int j = 0; j <= ns; ++j) {
    const double s = std::max(j * step, kGridClamp);
    for (int i = 0; i <= nt; ++i) {
      const double t = i * step;
      if (t < t_lo(s) - kEdge || t > t_hi(s) + kEdge) continue;
      // sigma(0) is infinite on the edge x + y = 1
      if (density == GridDensity::g12 && t + s > 1.0 - kEdge) continue;
      lattice.emplace_back(t, s);
    }
  }

  const QuadratureSpec spec = default_density_spec();
  grid.points.resize(lattice.size());
  parallel_for(lattice.size(), threads, [&](std::size_t i) {
    const auto [t, s] = lattice[i];
    double v = 0.0;
    switch (density) {
      case GridDensity::f12: v = f12_kernel(t, s); break;
      case GridDensity::g12: v = g12_kernel(t, s); break;
      case GridDensity::f13: v = f13_kernel(t, s, spec); break;
      case GridDensity::f14: v = f14_kernel(t, s, spec); break;
      case GridDensity::f23: v = f23_kernel(t, s, spec); break;
    }
    grid.points[i] = {t, s, v};
  });
  return grid;
}

}  // namespace cyclemetrics
