#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fwell {

/*
 * Box-counting dimension estimation for graphs of sampled one-variable
 * functions, via grid counts and Tricot's delta-variation:
 *
 *   dim_B graph f = lim_{delta->0} (2 - ln Var_delta(f) / ln delta)
 *
 * where Var_delta(f) = integral over [a,b] of the oscillation of f on the
 * window [x-delta, x+delta] clipped to the domain.
 */

// Uniformly sampled graph of a function on [a, b].
struct SampledGraph {
  double a = 0.0;
  double b = 1.0;
  std::vector<double> xs;
  std::vector<double> ys;

  static SampledGraph from_uniform(double a, double b, std::vector<double> ys);
  static SampledGraph from_points(double a, double b, std::vector<double> xs,
                                  std::vector<double> ys);

  double spacing() const { return (b - a) / static_cast<double>(ys.size() - 1); }
  std::size_t size() const { return ys.size(); }
  bool is_constant() const;  // flat within 1e-12 relative
};

// Dyadic-style scale ladder delta_n = base^{-n}, n = n_min..n_max.
struct DeltaLadder {
  double base = 2.0;
  int n_min = 4;
  int n_max = 12;

  std::vector<double> deltas() const;
  void validate() const;
  void validate_for(const SampledGraph& g) const;
};

// Result of a log-log scaling fit. Out-of-range dimensions are reported
// as-is with the warning flag, never clamped.
struct ScalingFit {
  double slope = 0.0;
  double dimension = 0.0;
  double r_squared = 0.0;
  int window_lo = 0;  // ladder exponents actually used after trimming
  int window_hi = 0;
  std::vector<double> residuals;
  bool out_of_range = false;
};

// Window half-width in samples for a given delta, and the scale actually
// realized by that discrete window.
std::int64_t window_halfwidth(const SampledGraph& g, double delta);
double effective_delta(const SampledGraph& g, double delta);

// Number of origin-anchored delta-grid squares met by the piecewise-linear
// interpolant of the samples.
std::int64_t box_count(const SampledGraph& g, double delta);

// max - min of the samples in [x-delta, x+delta] clipped to [a, b].
double oscillation(const SampledGraph& g, double x, double delta);

// Trapezoid integral of the oscillation over the grid; monotone-deque
// sliding window, O(n) per delta.
double variation(const SampledGraph& g, double delta);

// sup over pairs |y-z| <= delta of |f(y)-f(z)| (Hardy's global oscillation).
double modulus_of_continuity(const SampledGraph& g, double delta);

// W(delta) = integral of |f(x+delta) - f(x-delta)| over the sub-interval
// where both shifts stay inside [a, b]; lower-bound functional.
double shift_lower_functional(const SampledGraph& g, double delta);

struct LadderPoint {
  int n = 0;
  double delta = 0.0;
  double delta_eff = 0.0;
  double variation = 0.0;
  std::int64_t boxes = 0;
};

std::vector<LadderPoint> scan_ladder(const SampledGraph& g, const DeltaLadder& ladder,
                                     bool with_boxes);

ScalingFit fit_variation_points(std::span<const LadderPoint> pts);
ScalingFit fit_boxcount_points(std::span<const LadderPoint> pts);
ScalingFit fit_modulus_points(std::span<const double> delta_eff, std::span<const double> sup_osc,
                              int n_min);

// dimension = 2 - slope of ln Var against ln delta. Constant graphs are
// rejected (the variation theorem assumes a non-constant function).
ScalingFit fit_dimension_variation(const SampledGraph& g, const DeltaLadder& ladder);

// dimension = slope of ln N against ln 1/delta. Constant graphs yield
// dimension 1 directly.
ScalingFit fit_dimension_boxcount(const SampledGraph& g, const DeltaLadder& ladder);

// Ratios delta^2 N(delta) / Var at scales sqrt(2)*delta and delta; the
// sandwich inequalities bound both by delta-independent constants.
std::pair<double, double> sandwich_check(const SampledGraph& g, double delta);

// Section rule for an n-variable graph: n - 1 + max over axes of the
// per-axis supremum of section dimensions (n = 2 here).
double surface_dimension(std::span<const ScalingFit> x_sections,
                         std::span<const ScalingFit> t_sections);

}  // namespace fwell
