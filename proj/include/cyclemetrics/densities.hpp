#pragma once

// Joint limiting densities of the normalized longest cycle lengths
// (x, y, z, w) = (L1, L2, L3, L4) / n, and of the largest component sizes of a
// random mapping.

#include <span>
#include <string>
#include <vector>

#include "cyclemetrics/quadrature.hpp"

namespace cyclemetrics {

/// Tolerances used for the marginal densities f13, f14, f23 and f2.
QuadratureSpec default_density_spec();

// Points must satisfy 1 > x > y > z > w > 0 and x + y + z + w < 1 (up to the
// arity); anything else throws DomainError.
double f1(double x);
double f12(double x, double y);
double f123(double x, double y, double z);
double f1234(double x, double y, double z, double w);

/// Dispatches on coords.size() (1..4) to f1, f12, f123, f1234.
double f_ranked(std::span<const double> coords);

/// Marginal density of L2/n, 0 < y < 1/2.
double f2(double y, const QuadratureSpec& spec = default_density_spec());

/// (L1, L3) density: 0 < x < 1, 0 < z <= min(x, (1 - x) / 2).
double f13(double x, double z, const QuadratureSpec& spec = default_density_spec());

/// (L1, L4) density: 0 < x < 1, 0 < w <= min(x, (1 - x) / 3).
double f14(double x, double w, const QuadratureSpec& spec = default_density_spec());

/// (L2, L3) density: 0 < z <= 1/3, z <= y <= (1 - z) / 2.
double f23(double y, double z, const QuadratureSpec& spec = default_density_spec());

// Random mappings.
double g1(double x);
double g12(double x, double y);
double g1234(double x, double y, double z, double w);

/// Dispatches on coords.size() (1, 2 or 4).
double g_ranked(std::span<const double> coords);

enum class GridDensity { f12, f13, f14, f23, g12 };

GridDensity parse_grid_density(const std::string& name);
std::string to_string(GridDensity d);

struct GridPoint {
  double x;
  double y;
  double value;
};

struct Grid {
  GridDensity density;
  double step;
  /// Lattice rows with second coordinate below this are moved up to it.
  double clamp;
  /// Names of the two coordinates, e.g. {"y", "z"} for f23.
  std::string first;
  std::string second;
  std::vector<GridPoint> points;
};

inline constexpr double kGridClamp = 1e-4;

/// Evaluates `density` on the lattice {i h} x {j h} restricted to the density's
/// plotting domain. Requires 0 < step <= 0.1.
Grid density_grid(GridDensity density, double step, int threads = 1);

}  // namespace cyclemetrics
