#include "cyclemetrics/semismooth.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cyclemetrics/dickman.hpp"
#include "cyclemetrics/errors.hpp"

namespace cyclemetrics {

namespace {

constexpr int kMaxKnots = 24;
constexpr double kNegativeNoise = 1e-12;

double rho(double xi) { return dickman().rho1.value_or_zero(xi); }

// Points x in (lo, hi) with (top - x) / a a positive integer.
std::vector<double> knots(double top, double a, double lo, double hi) {
  std::vector<double> out;
  for (int k = 1; k <= kMaxKnots; ++k) {
    const double x = top - k * a;
    if (x <= lo) break;
    if (x < hi) out.push_back(x);
  }
  return out;
}

// base - k a / div for k = 0..kMaxKnots
void push_family(std::vector<double>& out, double base, double a, double div = 1.0) {
  for (int k = 0; k <= kMaxKnots; ++k) out.push_back((base - k * a) / div);
}

double clamp_probability(double v, const char* name) {
  if (v < -kNegativeNoise) {
    throw QuadratureError(std::string(name) + ": negative result " + std::to_string(v),
                          QuadResult{v, 0.0, 0});
  }
  return std::max(v, 0.0);
}

void check_ab(int k, double a, double b, const char* name) {
  if (k < 1 || k > 3) throw DomainError(std::string(name) + ": k must be 1, 2 or 3");
  if (!(a > 0.0 && a <= b && b <= 1.0)) {
    throw DomainError(std::string(name) + ": requires 0 < a <= b <= 1");
  }
  if (k == 2 && a > 0.5) throw DomainError(std::string(name) + ": k = 2 requires a <= 1/2");
  if (k == 3 && a > 1.0 / 3.0) throw DomainError(std::string(name) + ": k = 3 requires a <= 1/3");
}

double i1_raw(double a, double b, const QuadratureSpec& spec) {
  auto g = [a](double x) { return rho((1.0 - x) / a) / x; };
  return integrate_1d(g, a, b, spec, knots(1.0, a, a, b)).value;
}

// integral over y in (a, y_hi) of dy/y, x in (y, min(x_hi, 1 - y)) of
// rho((1 - x - y)/a) dx/x
double double_raw(double a, double y_hi, double x_hi, const QuadratureSpec& spec) {
  y_hi = std::min(y_hi, 0.5);
  if (!(y_hi > a)) return 0.0;
  const NestedLevel levels[] = {
      {[=](std::span<const double>) { return std::pair{a, y_hi}; },
       [=](std::span<const double>) {
         std::vector<double> br;
         push_family(br, 1.0, a, 2.0);
         push_family(br, 1.0 - x_hi, a);
         return br;
       }},
      {[=](std::span<const double> o) { return std::pair{o[0], std::min(x_hi, 1.0 - o[0])}; },
       [=](std::span<const double> o) {
         return knots(1.0 - o[0], a, o[0], std::min(x_hi, 1.0 - o[0]));
       }},
  };
  auto f = [a](std::span<const double> v) {
    return rho((1.0 - v[1] - v[0]) / a) / (v[0] * v[1]);
  };
  return integrate_nested(f, levels, spec).value;
}

// integral over z in (a, z_hi) dz/z, y in (z, min(y_hi, (1 - z)/2)) dy/y,
// x in (y, min(x_hi, 1 - y - z)) dx/x of rho((1 - x - y - z)/a)
double triple_raw(double a, double z_hi, double y_hi, double x_hi, const QuadratureSpec& spec) {
  z_hi = std::min(z_hi, 1.0 / 3.0);
  if (!(z_hi > a)) return 0.0;
  const NestedLevel levels[] = {
      {[=](std::span<const double>) { return std::pair{a, z_hi}; },
       [=](std::span<const double>) {
         std::vector<double> br;
         push_family(br, 1.0, a, 3.0);
         push_family(br, 1.0 - x_hi, a, 2.0);
         push_family(br, 1.0 - x_hi - y_hi, a);
         push_family(br, 1.0 - 2.0 * y_hi, a);
         push_family(br, 1.0 - 2.0 * x_hi, a);
         return br;
       }},
      {[=](std::span<const double> o) {
         return std::pair{o[0], std::min(y_hi, 0.5 * (1.0 - o[0]))};
       },
       [=](std::span<const double> o) {
         std::vector<double> br;
         push_family(br, 1.0 - o[0], a, 2.0);
         push_family(br, 1.0 - x_hi - o[0], a);
         return br;
       }},
      {[=](std::span<const double> o) {
         return std::pair{o[1], std::min(x_hi, 1.0 - o[1] - o[0])};
       },
       [=](std::span<const double> o) {
         return knots(1.0 - o[0] - o[1], a, o[1], std::min(x_hi, 1.0 - o[1] - o[0]));
       }},
  };
  auto f = [a](std::span<const double> v) {
    return rho((1.0 - v[2] - v[1] - v[0]) / a) / (v[0] * v[1] * v[2]);
  };
  return integrate_nested(f, levels, spec).value;
}

bool surely_true(double a, double b) { return a == b || b == 0.5; }

}  // namespace

QuadratureSpec default_prob_spec(int dimension) {
  QuadratureSpec s;
  s.abs_tol = dimension >= 3 ? 1e-9 : 1e-10;
  s.max_panels = 20000;
  return s;
}

double i0(double a) {
  if (!(a > 0.0 && a <= 1.0)) throw DomainError("i0: requires 0 < a <= 1");
  return rho(1.0 / a);
}

double i_count(int k, double a, double b) { return i_count(k, a, b, default_prob_spec(k)); }

double i_count(int k, double a, double b, const QuadratureSpec& spec) {
  check_ab(k, a, b, "i_count");
  if (a == b) return 0.0;
  double v = 0.0;
  switch (k) {
    case 1: v = i1_raw(a, b, spec); break;
    case 2: v = double_raw(a, b, b, spec); break;
    default: v = triple_raw(a, b, b, b, spec); break;
  }
  return clamp_probability(v, "i_count");
}

double j_cdf(int k, double a, double b) {
  check_ab(k, a, b, "j_cdf");
  double v = i0(a);
  for (int j = 1; j <= k; ++j) v += i_count(j, a, b);
  return v;
}

double k0(double a) {
  if (!(a > 0.0 && a <= 1.0 / 3.0)) throw DomainError("k0: requires 0 < a <= 1/3");
  return dickman().rho2.value_or_zero(1.0 / a);
}

ProbResult k1(double a, double b) { return k1(a, b, default_prob_spec(2)); }

ProbResult k1(double a, double b, const QuadratureSpec& spec) {
  if (!(a > 0.0 && a <= 1.0 / 3.0 && a <= b && b <= 0.5)) {
    throw DomainError("k1: requires 0 < a <= 1/3 and a <= b <= 1/2");
  }
  const double v = a == b ? 0.0 : double_raw(a, b, 1.0, spec);
  return {clamp_probability(v, "k1"), !surely_true(a, b)};
}

ProbResult l1(double a, double b) {
  if (!(a > 0.0 && a <= 1.0 / 3.0 && a <= b && b <= 0.5)) {
    throw DomainError("l1: requires 0 < a <= 1/3 and a <= b <= 1/2");
  }
  const ProbResult k = k1(a, b);
  return {k0(a) + k.value, k.provisional};
}

double ekk_box3(double a, double b, double c) {
  if (!(a > 0.0 && a < 1.0 / 3.0 && a <= b && b < 0.5 && b <= c && c <= 1.0)) {
    throw DomainError("ekk_box3: requires 0 < a < 1/3, a <= b < 1/2, b <= c <= 1");
  }
  if (a + b + c > 1.0) throw ValidityError("ekk_box3: formula asserted only for a + b + c <= 1");
  if (a == b) return 0.0;
  return clamp_probability(double_raw(a, b, c, default_prob_spec(2)), "ekk_box3");
}

double ekk_box4(double alpha, double beta, double gamma, double delta) {
  if (!(alpha > 0.0 && alpha < 0.25 && alpha <= beta && beta < 1.0 / 3.0 && beta <= gamma &&
        gamma < 0.5 && gamma <= delta && delta <= 1.0)) {
    throw DomainError(
        "ekk_box4: requires 0 < alpha < 1/4, alpha <= beta < 1/3, beta <= gamma < 1/2, "
        "gamma <= delta <= 1");
  }
  if (alpha + beta + gamma + delta > 1.0) {
    throw ValidityError("ekk_box4: formula asserted only for alpha + beta + gamma + delta <= 1");
  }
  if (alpha == beta) return 0.0;
  return clamp_probability(triple_raw(alpha, beta, gamma, delta, default_prob_spec(3)),
                           "ekk_box4");
}

JointProbQuery parse_prob_kind(const std::string& name) {
  if (name.size() == 2 && (name[0] == 'i' || name[0] == 'j') && name[1] >= '1' &&
      name[1] <= '3') {
    return {name[0] == 'i' ? ProbKind::i_count : ProbKind::j_cdf, name[1] - '0', {}};
  }
  if (name == "i0") return {ProbKind::i0, 0, {}};
  if (name == "k0") return {ProbKind::k0, 0, {}};
  if (name == "k1") return {ProbKind::k1, 0, {}};
  if (name == "l1") return {ProbKind::l1, 0, {}};
  if (name == "box3") return {ProbKind::ekk_box3, 0, {}};
  if (name == "box4") return {ProbKind::ekk_box4, 0, {}};
  throw DomainError("unknown probability '" + name +
                    "' (expected i0 i1 i2 i3 j1 j2 j3 k0 k1 l1 box3 box4)");
}

int arity(const JointProbQuery& q) {
  switch (q.kind) {
    case ProbKind::i0:
    case ProbKind::k0: return 1;
    case ProbKind::ekk_box3: return 3;
    case ProbKind::ekk_box4: return 4;
    default: return 2;
  }
}

ProbResult evaluate(const JointProbQuery& q) {
  const auto& x = q.args;
  switch (q.kind) {
    case ProbKind::i0: return {i0(x[0]), false};
    case ProbKind::i_count: return {i_count(q.rank, x[0], x[1]), false};
    case ProbKind::j_cdf: return {j_cdf(q.rank, x[0], x[1]), false};
    case ProbKind::k0: return {k0(x[0]), false};
    case ProbKind::k1: return k1(x[0], x[1]);
    case ProbKind::l1: return l1(x[0], x[1]);
    case ProbKind::ekk_box3: return {ekk_box3(x[0], x[1], x[2]), false};
    case ProbKind::ekk_box4: return {ekk_box4(x[0], x[1], x[2], x[3]), false};
  }
  throw DomainError("evaluate: unknown kind");
}

}  // namespace cyclemetrics
