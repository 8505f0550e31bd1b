#include "cyclemetrics/quadrature.hpp"

#include <cmath>

namespace cyclemetrics {

namespace {

struct NestedContext {
  const std::function<double(std::span<const double>)>& f;
  std::span<const NestedLevel> levels;
  const QuadratureSpec& spec;
  std::vector<double> vars;
  long evaluations = 0;
};

QuadResult integrate_level(NestedContext& ctx, std::size_t depth) {
  const std::span<const double> outer(ctx.vars.data(), depth);
  const NestedLevel& level = ctx.levels[depth];
  const auto [lo, hi] = level.bounds(outer);
  if (!(hi > lo)) return {};

  QuadratureSpec s = ctx.spec;
  s.abs_tol = ctx.spec.abs_tol * std::pow(0.1, static_cast<double>(depth));
  s.transform = level.transform;
  std::vector<double> breaks;
  if (level.breaks) breaks = level.breaks(outer);

  const bool innermost = depth + 1 == ctx.levels.size();
  auto g = [&](double x) {
    ctx.vars[depth] = x;
    if (innermost) {
      ++ctx.evaluations;
      return ctx.f(std::span<const double>(ctx.vars.data(), ctx.levels.size()));
    }
    return integrate_level(ctx, depth + 1).value;
  };
  try {
    return integrate_1d(g, lo, hi, s, breaks);
  } catch (const QuadratureError& e) {
    if (e.level() > 0) throw;
    throw QuadratureError(std::string(e.what()) + " (nested level " + std::to_string(depth + 1) +
                              ")",
                          e.best(), static_cast<int>(depth + 1));
  }
}

}  // namespace

QuadResult integrate_nested(const std::function<double(std::span<const double>)>& f,
                            std::span<const NestedLevel> levels, const QuadratureSpec& spec) {
  if (levels.empty() || levels.size() > 4) {
    throw std::invalid_argument("integrate_nested: supports 1 to 4 levels");
  }
  NestedContext ctx{f, levels, spec, std::vector<double>(levels.size(), 0.0)};
  QuadResult r = integrate_level(ctx, 0);
  r.evaluations = ctx.evaluations;
  return r;
}

}  // namespace cyclemetrics
