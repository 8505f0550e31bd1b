#pragma once

// Limiting normalized moments of the longest cycle lengths:
//   moment(r, h)       = lim E(L_r^h) / n^h,  r = 1..4, h = 1..2
//   cross_moment(r, s) = lim E(L_r L_s) / n^2, (r, s) in {(1,2), (1,3), (1,4), (2,3)}
//   correlation(r, s)  = limiting correlation coefficient of L_r and L_s

#include "cyclemetrics/quadrature.hpp"

namespace cyclemetrics {

/// Tolerance used by cross_moment for a `dimension`-fold integral.
QuadratureSpec default_moment_spec(int dimension);

double moment(int r, int h);

double cross_moment(int r, int s);
double cross_moment(int r, int s, const QuadratureSpec& spec);

double correlation(int r, int s);

}  // namespace cyclemetrics
