#pragma once

// Joint distribution functionals of the longest cycle lengths, written as
// low-dimensional integrals over rho. All arguments are fractions of n.
//
//   I_0(a)     rho(1/a) = P{L1 <= an}
//   I_k(a, b)  P{exactly k cycles in (an, bn], all others <= an}
//   J_k(a, b)  P{L_{k+1} <= an & L1 <= bn} = rho(1/a) + I_1 + ... + I_k
//   K0(a)      rho2(1/a)
//   K1(a, b)   integral standing in for P{L3 <= an & an < L2 <= bn}
//   L1(a, b)   K0(a) + K1(a, b), standing in for P{L3 <= an & L2 <= bn}
//
// K1 and L1 assume the box formula below stays valid without its a + b + c <= 1
// condition. That assumption overestimates the true probabilities, so their
// results carry a `provisional` flag except at a = b and at b = 1/2, where
// L1 reduces to rho2(1/b) and rho3(1/a).

#include <array>
#include <string>

#include "cyclemetrics/quadrature.hpp"

namespace cyclemetrics {

struct ProbResult {
  double value = 0.0;
  bool provisional = false;
};

/// abs_tol 1e-10 for single and double integrals; triple integrals use 1e-9
/// at the outermost level (inner levels tighten by 10 per level).
QuadratureSpec default_prob_spec(int dimension);

/// rho(1/a) for 0 < a <= 1.
double i0(double a);

/// k in 1..3; 0 < a <= b <= 1, plus a <= 1/2 for k = 2 and a <= 1/3 for k = 3.
double i_count(int k, double a, double b);
double i_count(int k, double a, double b, const QuadratureSpec& spec);

/// Same domain as i_count. j_cdf(k, a, b) = rho(1/a) + sum of i_count(1..k).
double j_cdf(int k, double a, double b);

/// 0 < a <= 1/3.
double k0(double a);

/// 0 < a <= 1/3, a <= b <= 1/2.
ProbResult k1(double a, double b);
ProbResult k1(double a, double b, const QuadratureSpec& spec);

/// 0 < a <= 1/3, a <= b <= 1/2.
ProbResult l1(double a, double b);

/// P{L3 <= an, an < L2 <= bn & L1 <= cn} for 0 < a < 1/3, a <= b < 1/2,
/// b <= c <= 1. Throws ValidityError when a + b + c > 1.
double ekk_box3(double a, double b, double c);

/// Iterated integral over z in (alpha, beta], y in (z, gamma], x in (y, delta]
/// of rho((1 - x - y - z)/alpha) dx/x dy/y dz/z, i.e. the limit of
/// P{L4 <= alpha n, alpha n < L3 <= beta n, L2 <= gamma n & L1 <= delta n}.
/// Requires 0 < alpha < 1/4, alpha <= beta < 1/3, beta <= gamma < 1/2,
/// gamma <= delta <= 1; throws ValidityError when the sum exceeds 1.
double ekk_box4(double alpha, double beta, double gamma, double delta);

enum class ProbKind { i0, i_count, j_cdf, k0, k1, l1, ekk_box3, ekk_box4 };

struct JointProbQuery {
  ProbKind kind;
  /// k for i_count / j_cdf, otherwise unused.
  int rank = 0;
  std::array<double, 4> args{};
};

/// Parses a kind name: i0 i1 i2 i3 j1 j2 j3 k0 k1 l1 box3 box4.
JointProbQuery parse_prob_kind(const std::string& name);

/// Number of arguments the query kind takes.
int arity(const JointProbQuery& q);

ProbResult evaluate(const JointProbQuery& q);

}  // namespace cyclemetrics
