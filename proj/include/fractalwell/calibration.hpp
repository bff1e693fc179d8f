#pragma once

#include "fractalwell/fractal_dim.hpp"

namespace fwell {

/*
 * Classical Weierstrass oracle W(x) = sum a^n cos(b^n pi x). The graph
 * dimension 2 + ln a / ln b is known analytically, so these functions
 * validate the estimators before quantum states are trusted to them.
 */
struct WeierstrassParams {
  double a = 0.5;
  double b = 4.0;
  int M = 25;

  void validate() const;
  double hardy_exponent() const;  // H = ln(1/a)/ln b
};

double eval_weierstrass(const WeierstrassParams& p, double x);
double theoretical_dimension(const WeierstrassParams& p);  // 2 + ln a / ln b

SampledGraph sample_weierstrass(const WeierstrassParams& p, double x0, double x1,
                                std::int64_t n_intervals);

// Fits the scaling exponent of the global oscillation sup over the ladder;
// slope approximates H. Samples [0,1] densely enough for the smallest delta.
ScalingFit hardy_exponent_check(const WeierstrassParams& p, const DeltaLadder& ladder,
                                std::int64_t n_intervals = 0);

}  // namespace fwell
