#pragma once

// Limiting laws of the shortest (S1) and second-shortest (S2) cycle lengths of
// a uniform random permutation, plus a simulation of E(S1 S2) growth in n.

#include <cstdint>
#include <vector>

namespace cyclemetrics {

/// P{S1 = i}, i >= 1.
double p_s1(long i);

/// P{S2 = j}, j >= 1. S2 = S1 when there are two or more shortest cycles.
double p_s2(long j);

/// P{S1 = i & S2 = j}; 0 when i > j.
double p_s1_s2(long i, long j);

/// Limiting Poisson rates of the cycle counts C_1 .. C_ell_max: 1, 1/2, ...
std::vector<double> poisson_cycle_counts(long ell_max);

struct GrowthRow {
  long n;
  double mean;
  double std_err;
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  /// Least-squares c in mean ~ c ln(n)^3 (through the origin).
  double c = 0.0;
  /// 1 - SS_res / SS_tot of that fit (uncentered when fewer than 2 rows).
  double r_squared = 0.0;
  std::vector<double> residuals;
};

/// Simulates E(S1 S2) at each n (ascending), with S2 = 0 for single-cycle
/// permutations.
GrowthReport s1s2_growth_experiment(const std::vector<long>& n_grid, long reps,
                                    std::uint64_t seed, int threads = 1);

}  // namespace cyclemetrics
