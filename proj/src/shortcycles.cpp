#include "cyclemetrics/shortcycles.hpp"

#include <cmath>

#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/montecarlo.hpp"
#include "cyclemetrics/specfun.hpp"

namespace cyclemetrics {

namespace {

double h(long m) {
  static const HarmonicTable table(1 << 16);
  return static_cast<std::size_t>(m) <= table.max_index() ? table[m] : harmonic(m);
}

double exp_neg_h(long m) { return std::exp(-h(m)); }

}  // namespace

double p_s1(long i) {
  if (i < 1) throw DomainError("p_s1: i must be >= 1");
  return exp_neg_h(i - 1) - exp_neg_h(i);
}

double p_s2(long j) {
  if (j < 1) throw DomainError("p_s2: j must be >= 1");
  return (h(j - 1) + 1.0) * exp_neg_h(j - 1) - (h(j) + 1.0) * exp_neg_h(j);
}

double p_s1_s2(long i, long j) {
  if (i < 1 || j < 1) throw DomainError("p_s1_s2: i and j must be >= 1");
  if (i > j) return 0.0;
  if (i == j) return exp_neg_h(i - 1) - (1.0 + 1.0 / i) * exp_neg_h(i);
  return (exp_neg_h(j - 1) - exp_neg_h(j)) / i;
}

std::vector<double> poisson_cycle_counts(long ell_max) {
  if (ell_max < 1) throw DomainError("poisson_cycle_counts: ell_max must be >= 1");
  std::vector<double> rates(ell_max);
  for (long l = 1; l <= ell_max; ++l) rates[l - 1] = 1.0 / l;
  return rates;
}

GrowthReport s1s2_growth_experiment(const std::vector<long>& n_grid, long reps,
                                    std::uint64_t seed, int threads) {
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw DomainError("s1s2_growth_experiment: n_grid must be positive and ascending");
    }
  }
  GrowthReport report;
  for (long n : n_grid) {
    SimConfig cfg;
    cfg.n = n;
    cfg.reps = reps;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto est = estimate_statistics(
        cfg, {[](const CycleType& c) {
          return static_cast<double>(c.smallest(1)) * static_cast<double>(c.smallest(2));
        }});
    report.rows.push_back({n, est[0].mean, est[0].std_err});
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& row : report.rows) {
    const double l3 = std::pow(std::log(static_cast<double>(row.n)), 3);
    num += l3 * row.mean;
    den += l3 * l3;
  }
  report.c = den > 0.0 ? num / den : 0.0;
  double mean = 0.0;
  for (const auto& row : report.rows) mean += row.mean;
  if (!report.rows.empty()) mean /= static_cast<double>(report.rows.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (const auto& row : report.rows) {
    const double fit = report.c * std::pow(std::log(static_cast<double>(row.n)), 3);
    report.residuals.push_back(row.mean - fit);
    ss_res += (row.mean - fit) * (row.mean - fit);
    ss_tot += report.rows.size() > 1 ? (row.mean - mean) * (row.mean - mean) : row.mean * row.mean;
  }
  report.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  return report;
}

}  // namespace cyclemetrics
