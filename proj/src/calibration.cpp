#include "fractalwell/calibration.hpp"

#include <cmath>
#include <stdexcept>

#include "fractalwell/phase.hpp"

namespace fwell {

void WeierstrassParams::validate() const {
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("WeierstrassParams: a must be in (0,1)");
  if (!(b > 1.0)) throw std::invalid_argument("WeierstrassParams: b must exceed 1");
  if (!(a * b > 1.0))
    throw std::invalid_argument("WeierstrassParams: needs a*b > 1 (Hardy's range)");
  if (M < 0) throw std::invalid_argument("WeierstrassParams: M must be >= 0");
}

double WeierstrassParams::hardy_exponent() const { return std::log(1.0 / a) / std::log(b); }

double eval_weierstrass(const WeierstrassParams& p, double x) {
  p.validate();
  if (!std::isfinite(x)) throw std::invalid_argument("eval_weierstrass: non-finite x");
  // phase of term n in turns: b^n * x/2, reduced mod 1 at every step
  DD u{x * 0.5, 0.0};
  u = dd_frac(u);
  double sum = 0.0, w = 1.0;
  for (int n = 0; n <= p.M; ++n) {
    DD v = u.hi >= 0.5 ? dd_add(u, -1.0) : u;
    const double phase =
        6.283185307179586 * v.hi + (6.283185307179586 * v.lo + 2.4492935982947064e-16 * v.hi);
    sum += w * std::cos(phase);
    w *= p.a;
    u = dd_frac(dd_mul(u, p.b));
  }
  return sum;
}

double theoretical_dimension(const WeierstrassParams& p) {
  p.validate();
  return 2.0 + std::log(p.a) / std::log(p.b);
}

SampledGraph sample_weierstrass(const WeierstrassParams& p, double x0, double x1,
                                std::int64_t n_intervals) {
  p.validate();
  if (n_intervals < 1) throw std::invalid_argument("sample_weierstrass: needs n_intervals >= 1");
  std::vector<double> ys(n_intervals + 1);
  const double h = (x1 - x0) / static_cast<double>(n_intervals);
  for (std::int64_t i = 0; i <= n_intervals; ++i)
    ys[i] = eval_weierstrass(p, x0 + static_cast<double>(i) * h);
  return SampledGraph::from_uniform(x0, x1, std::move(ys));
}

ScalingFit hardy_exponent_check(const WeierstrassParams& p, const DeltaLadder& ladder,
                                std::int64_t n_intervals) {
  ladder.validate();
  if (n_intervals == 0) {
    const double d_min = std::pow(ladder.base, -ladder.n_max);
    n_intervals = static_cast<std::int64_t>(std::ceil(8.0 / d_min));
  }
  const SampledGraph g = sample_weierstrass(p, 0.0, 1.0, n_intervals);
  ladder.validate_for(g);
  std::vector<double> deff, sup;
  for (int n = ladder.n_min; n <= ladder.n_max; ++n) {
    const double delta = std::pow(ladder.base, -n);
    deff.push_back(effective_delta(g, delta));
    sup.push_back(modulus_of_continuity(g, delta));
  }
  return fit_modulus_points(deff, sup, ladder.n_min);
}

}  // namespace fwell
