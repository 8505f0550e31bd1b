#include "cyclemetrics/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cyclemetrics/errors.hpp"
#include "json.hpp"

namespace cyclemetrics {

namespace {

constexpr double kRhoResidualTarget = 1e-12;
constexpr double kSigmaResidualTarget = 1e-10;

// Coefficients are generated in extended precision: forward integration of
// these DDEs leaves an absolute error floor that excites a slowly decaying
// companion solution, so the floor must sit well below rho(20) ~ 2.5e-29.
#if defined(__SIZEOF_FLOAT128__)
using BuildReal = __float128;
#else
using BuildReal = long double;
#endif

// Internal series length used while building; stored segments are truncated
// to the requested degree afterwards.
constexpr int kBuildDegreeRho = 90;
constexpr int kBuildDegreeSigma = 120;

// Polynomial coefficients in u = s / 2 on one segment, u in [-1/2, 1/2].
template <class Real>
using Taylor = std::vector<Real>;

template <class Real>
Real horner(const std::vector<Real>& c, Real x) {
  Real acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t j = c.size() - 1; j >= 1; --j) acc = acc * x + static_cast<double>(j) * c[j];
  return acc;
}

std::vector<double> to_unit_basis(const Taylor<BuildReal>& a, int degree) {
  // u = s / 2
  std::vector<double> c(degree + 1);
  BuildReal scale = 1;
  for (int j = 0; j <= degree; ++j) {
    c[j] = static_cast<double>(a[j] * scale);
    scale *= 0.5;
  }
  return c;
}

// Segment k of rho_r in u = xi - (k + 1/2). `prev_self` and `prev_lower` are
// rho_r and rho_{r-1} on segment k-1 in their own u, which is the same u
// shifted by one. The DDE xi f' = -f(xi-1) + lower(xi-1) gives
//   c (j+1) a_{j+1} + j a_j = g_j,   c = k + 1/2.
template <class Real>
Taylor<Real> rho_segment(int k, int degree, const Taylor<Real>& prev_self,
                         const Taylor<Real>* prev_lower) {
  const Real center = Real(k) + Real(0.5);
  Taylor<Real> a(degree + 1, Real(0));
  for (int j = 0; j < degree; ++j) {
    Real g = -prev_self[j];
    if (prev_lower) g += (*prev_lower)[j];
    a[j + 1] = (g - Real(j) * a[j]) / (center * Real(j + 1));
  }
  // continuity at xi = k: this segment at u = -1/2 equals the previous at u = +1/2
  const Real left_value = horner(prev_self, Real(0.5));
  Real tail = 0;
  for (int j = degree; j >= 1; --j) tail = (tail + a[j]) * Real(-0.5);
  a[0] = left_value - tail;
  return a;
}

// Segment k of sigma in u = t - 1/2 with t = sqrt(xi - k). With h(t) =
// t sigma(xi - 1) the DDE becomes (k + t^2) sigma_t + t sigma + h = 0.
template <class Real>
Taylor<Real> sigma_segment(int k, int degree, const Taylor<Real>& h, Real left_value) {
  const Real tau = 0.5;
  const Real lead = Real(k) + tau * tau;
  auto run = [&](Real a0, bool forced) {
    Taylor<Real> a(degree + 1, Real(0));
    a[0] = a0;
    for (int j = 0; j < degree; ++j) {
      const Real prev = j >= 1 ? a[j - 1] : Real(0);
      const Real hj = forced ? h[j] : Real(0);
      a[j + 1] = -(tau * Real(2 * j + 1) * a[j] + Real(j) * prev + hj) / (lead * Real(j + 1));
    }
    return a;
  };
  const Taylor<Real> homogeneous = run(Real(1), false);
  const Taylor<Real> particular = run(Real(0), true);
  const Real p = horner(homogeneous, Real(-0.5));
  const Real q = horner(particular, Real(-0.5));
  const Real a0 = (left_value - q) / p;
  Taylor<Real> a(degree + 1);
  for (int j = 0; j <= degree; ++j) a[j] = a0 * homogeneous[j] + particular[j];
  return a;
}

// rho_r on every segment, u-coefficients of length kBuildDegreeRho + 1.
std::vector<Taylor<BuildReal>> rho_taylor(int r, int nseg) {
  std::vector<Taylor<BuildReal>> lower;
  if (r >= 2) lower = rho_taylor(r - 1, nseg);
  std::vector<Taylor<BuildReal>> taylor(nseg);
  taylor[0].assign(kBuildDegreeRho + 1, BuildReal(0));
  taylor[0][0] = 1;  // rho_r = 1 on [0, 1]
  for (int k = 1; k < nseg; ++k) {
    taylor[k] =
        rho_segment(k, kBuildDegreeRho, taylor[k - 1], r >= 2 ? &lower[k - 1] : nullptr);
  }
  return taylor;
}

int segment_count(double xi_max) { return static_cast<int>(std::ceil(xi_max)); }

void check_build_args(double xi_max, int degree) {
  if (!(xi_max >= 2.0) || std::isinf(xi_max)) {
    throw DomainError("build: xi_max must be finite and >= 2");
  }
  if (degree < 4) throw DomainError("build: degree must be >= 4");
}

}  // namespace

std::string to_string(DelayFamily family) {
  switch (family) {
    case DelayFamily::rho1: return "rho1";
    case DelayFamily::rho2: return "rho2";
    case DelayFamily::rho3: return "rho3";
    case DelayFamily::rho4: return "rho4";
    case DelayFamily::sigma: return "sigma";
  }
  return "?";
}

PiecewiseFn::PiecewiseFn(DelayFamily family, double xi_max,
                         std::vector<std::vector<double>> segments)
    : family_(family), xi_max_(xi_max), segments_(std::move(segments)) {}

int PiecewiseFn::rank() const {
  switch (family_) {
    case DelayFamily::rho2: return 2;
    case DelayFamily::rho3: return 3;
    case DelayFamily::rho4: return 4;
    default: return 1;
  }
}

int PiecewiseFn::segment_of(double xi) const {
  // (k, k+1] belongs to segment k, so knots are evaluated from the left
  return static_cast<int>(std::ceil(xi)) - 1;
}

double PiecewiseFn::operator()(double xi) const {
  if (std::isnan(xi)) throw DomainError("eval: NaN argument");
  if (xi > xi_max_) {
    throw OutOfRangeError("eval: " + to_string(family_) + "(" + std::to_string(xi) +
                          ") beyond xi_max = " + std::to_string(xi_max_));
  }
  if (family_ == DelayFamily::sigma) {
    if (!(xi > 0.0)) throw DomainError("eval: sigma requires xi > 0");
    if (xi <= 1.0) return 1.0 / std::sqrt(xi);
    const int k = segment_of(xi);
    const double t = std::sqrt(xi - k);
    return horner(segments_[k], 2.0 * t - 1.0);
  }
  if (xi < 0.0) return 0.0;
  if (xi <= 1.0) return 1.0;
  const int k = segment_of(xi);
  return horner(segments_[k], 2.0 * (xi - k) - 1.0);
}

double PiecewiseFn::value_or_zero(double xi) const {
  return xi > xi_max_ ? 0.0 : (*this)(xi);
}

double PiecewiseFn::derivative(double xi) const {
  if (xi > xi_max_) throw OutOfRangeError("derivative: beyond xi_max");
  if (family_ == DelayFamily::sigma) {
    if (!(xi > 0.0)) throw DomainError("derivative: sigma requires xi > 0");
    if (xi <= 1.0) return -0.5 / (xi * std::sqrt(xi));
    const int k = segment_of(xi);
    const double t = std::sqrt(xi - k);
    // d/dxi = (ds/dt)(dt/dxi) d/ds = 2 / (2t) d/ds
    return horner_derivative(segments_[k], 2.0 * t - 1.0) / t;
  }
  if (xi <= 1.0) return 0.0;
  const int k = segment_of(xi);
  return 2.0 * horner_derivative(segments_[k], 2.0 * (xi - k) - 1.0);
}

double PiecewiseFn::residual_at(double xi) const {
  const double f = (*this)(xi);
  double r;
  if (family_ == DelayFamily::sigma) {
    r = xi * derivative(xi) + 0.5 * f + 0.5 * (*this)(xi - 1.0);
  } else {
    r = xi * derivative(xi) + (*this)(xi - 1.0);
    if (!lower_.empty()) r -= lower_.front()(xi - 1.0);
  }
  return std::abs(r) / std::abs(f);
}

double PiecewiseFn::max_residual(int samples) const {
  double worst = 0.0;
  for (int k = 1; k < static_cast<int>(segments_.size()); ++k) {
    for (int i = 0; i < samples; ++i) {
      const double xi = k + (i + 0.5) / samples;
      if (xi > xi_max_) break;
      worst = std::max(worst, residual_at(xi));
    }
  }
  return worst;
}

std::string PiecewiseFn::to_json() const {
  nlohmann::json j;
  j["family"] = to_string(family_);
  j["xi_max"] = xi_max_;
  j["basis"] = family_ == DelayFamily::sigma ? "s = 2 sqrt(xi - k) - 1" : "s = 2 (xi - k) - 1";
  j["segments"] = nlohmann::json::array();
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    j["segments"].push_back({{"k", k}, {"coefficients", segments_[k]}});
  }
  return j.dump();
}

PiecewiseFn build_rho(int r, double xi_max, int degree) {
  if (r < 1 || r > 4) throw DomainError("build_rho: rank must be 1..4");
  check_build_args(xi_max, degree);
  if (degree > kBuildDegreeRho) throw DomainError("build_rho: degree too large");
  const int nseg = segment_count(xi_max);

  const auto taylor = rho_taylor(r, nseg);
  std::vector<std::vector<double>> segments(nseg);
  segments[0] = {1.0};
  for (int k = 1; k < nseg; ++k) segments[k] = to_unit_basis(taylor[k], degree);

  PiecewiseFn fn(static_cast<DelayFamily>(r - 1), xi_max, std::move(segments));
  if (r >= 2) fn.lower_.push_back(build_rho(r - 1, xi_max, degree));
  const double residual = fn.max_residual();
  if (!(residual < kRhoResidualTarget)) {
    throw ConstructionError("build_rho: DDE residual " + std::to_string(residual) +
                                " exceeds target; increase degree",
                            residual);
  }
  return fn;
}

PiecewiseFn build_sigma(double xi_max, int degree) {
  check_build_args(xi_max, degree);
  if (degree > kBuildDegreeSigma) throw DomainError("build_sigma: degree too large");
  const int nseg = segment_count(xi_max);

  std::vector<std::vector<double>> segments(nseg);
  // segment 0 (1/sqrt(xi) = 1/t) only enters through h = t * sigma = 1
  Taylor<BuildReal> h(kBuildDegreeSigma + 1, BuildReal(0));
  h[0] = 1;
  BuildReal left_value = 1;
  for (int k = 1; k < nseg; ++k) {
    const auto a = sigma_segment(k, kBuildDegreeSigma, h, left_value);
    segments[k] = to_unit_basis(a, degree);
    // h for the next segment: (1/2 + u) * sigma_k(u)
    for (int j = 0; j <= kBuildDegreeSigma; ++j) {
      h[j] = BuildReal(0.5) * a[j] + (j >= 1 ? a[j - 1] : BuildReal(0));
    }
    left_value = horner(a, BuildReal(0.5));
  }

  PiecewiseFn fn(DelayFamily::sigma, xi_max, std::move(segments));
  const double residual = fn.max_residual();
  if (!(residual < kSigmaResidualTarget)) {
    throw ConstructionError("build_sigma: DDE residual " + std::to_string(residual) +
                                " exceeds target; increase degree",
                            residual);
  }
  return fn;
}

double eval(const PiecewiseFn& fn, double xi) { return fn(xi); }

const PiecewiseFn& DickmanSet::rho(int r) const {
  switch (r) {
    case 1: return rho1;
    case 2: return rho2;
    case 3: return rho3;
    case 4: return rho4;
    default: throw DomainError("rho: rank must be 1..4");
  }
}

const DickmanSet& dickman() {
  static const DickmanSet set{build_rho(1), build_rho(2), build_rho(3), build_rho(4),
                              build_sigma()};
  return set;
}

}  // namespace cyclemetrics
