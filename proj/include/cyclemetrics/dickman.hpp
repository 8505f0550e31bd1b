#pragma once

#include <string>
#include <vector>

namespace cyclemetrics {

/// Which delay-differential family member a PiecewiseFn represents.
enum class DelayFamily { rho1, rho2, rho3, rho4, sigma };

std::string to_string(DelayFamily family);

/// Piecewise-polynomial representation of a Dickman-type function on unit
/// segments [k, k+1], k = 0 .. ceil(xi_max) - 1.
///
/// Segment k >= 1 stores coefficients c_j of a polynomial in s in [-1, 1]:
///   rho_r:  xi = k + (1 + s) / 2
///   sigma:  xi = k + t^2 with t = (1 + s) / 2
/// Segment 0 is handled in closed form (rho_r = 1, sigma = xi^{-1/2}).
/// Immutable once built; safe to share between threads.
class PiecewiseFn {
 public:
  PiecewiseFn(DelayFamily family, double xi_max, std::vector<std::vector<double>> segments);

  DelayFamily family() const { return family_; }
  int rank() const;
  double xi_max() const { return xi_max_; }
  int degree() const { return static_cast<int>(segments_.empty() ? 0 : segments_[1].size() - 1); }
  const std::vector<std::vector<double>>& segments() const { return segments_; }

  /// Value at xi. rho_r is 0 for xi < 0; sigma throws DomainError for xi <= 0.
  /// Throws OutOfRangeError for xi > xi_max.
  double operator()(double xi) const;

  /// Like operator() but returns 0 beyond xi_max instead of throwing. Both
  /// families are below 1e-25 at xi = 20, so density kernels use this to
  /// integrate through the far tail.
  double value_or_zero(double xi) const;

  /// First derivative in xi (one-sided from the left at knots).
  double derivative(double xi) const;

  /// Largest relative DDE residual over `samples` points per segment.
  double max_residual(int samples = 100) const;

  /// Coefficient dump for inspection: {"family", "xi_max", "segments": [[...], ...]}.
  std::string to_json() const;

 private:
  friend PiecewiseFn build_rho(int, double, int);
  friend PiecewiseFn build_sigma(double, int);

  int segment_of(double xi) const;
  double residual_at(double xi) const;

  DelayFamily family_;
  double xi_max_;
  std::vector<std::vector<double>> segments_;
  // rho_{r-1} for r >= 2, needed by the residual check
  std::vector<PiecewiseFn> lower_;
};

/// Builds rho_r (r = 1..4). Throws ConstructionError if the DDE residual
/// exceeds 1e-12 relative to rho_r (raise `degree`).
PiecewiseFn build_rho(int r, double xi_max = 20.0, int degree = 30);

/// Builds sigma. Throws ConstructionError if the residual exceeds 1e-10.
PiecewiseFn build_sigma(double xi_max = 20.0, int degree = 45);

double eval(const PiecewiseFn& fn, double xi);

/// rho_1..rho_4 and sigma built once with default parameters.
struct DickmanSet {
  PiecewiseFn rho1;
  PiecewiseFn rho2;
  PiecewiseFn rho3;
  PiecewiseFn rho4;
  PiecewiseFn sigma;

  const PiecewiseFn& rho(int r) const;
};

/// Process-wide tables, built on first use (thread-safe initialization).
const DickmanSet& dickman();

}  // namespace cyclemetrics
