#include "fractalwell/fractal_dim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace fwell {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("fractal_dim: delta must be positive and finite");
}

}  // namespace

SampledGraph SampledGraph::from_uniform(double a, double b, std::vector<double> ys) {
  if (!(b > a)) throw std::invalid_argument("SampledGraph: requires b > a");
  if (ys.size() < 2) throw std::invalid_argument("SampledGraph: needs at least 2 samples");
  for (double y : ys)
    if (!std::isfinite(y)) throw std::invalid_argument("SampledGraph: non-finite ordinate");
  SampledGraph g;
  g.a = a;
  g.b = b;
  g.ys = std::move(ys);
  const double h = (b - a) / static_cast<double>(g.ys.size() - 1);
  g.xs.resize(g.ys.size());
  for (std::size_t i = 0; i < g.xs.size(); ++i) g.xs[i] = a + static_cast<double>(i) * h;
  g.xs.back() = b;
  return g;
}

SampledGraph SampledGraph::from_points(double a, double b, std::vector<double> xs,
                                       std::vector<double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("SampledGraph: xs/ys length mismatch");
  SampledGraph g = from_uniform(a, b, std::move(ys));
  const double tol = 1e-12 * (b - a);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - g.xs[i]) > tol)
      throw std::invalid_argument("SampledGraph: abscissae not uniformly spaced");
  g.xs = std::move(xs);
  return g;
}

bool SampledGraph::is_constant() const {
  const auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
  const double scale = std::max({1.0, std::abs(*mn), std::abs(*mx)});
  return (*mx - *mn) <= 1e-12 * scale;
}

std::vector<double> DeltaLadder::deltas() const {
  validate();
  std::vector<double> d;
  for (int n = n_min; n <= n_max; ++n) d.push_back(std::pow(base, -n));
  return d;
}

void DeltaLadder::validate() const {
  if (!(base > 1.0)) throw std::invalid_argument("DeltaLadder: base must exceed 1");
  if (n_max <= n_min) throw std::invalid_argument("DeltaLadder: needs n_max > n_min");
}

void DeltaLadder::validate_for(const SampledGraph& g) const {
  validate();
  const double d_max = std::pow(base, -n_min);
  const double d_min = std::pow(base, -n_max);
  if (!(d_max < (g.b - g.a) / 2.0))
    throw std::invalid_argument("DeltaLadder: largest delta must be below half the domain");
  if (!(d_min > 2.0 * g.spacing()))
    throw std::invalid_argument("DeltaLadder: smallest delta below sample resolution");
}

std::int64_t window_halfwidth(const SampledGraph& g, double delta) {
  check_delta(delta);
  return static_cast<std::int64_t>(std::floor(delta / g.spacing() + 1e-9));
}

double effective_delta(const SampledGraph& g, double delta) {
  return static_cast<double>(window_halfwidth(g, delta)) * g.spacing();
}

std::int64_t box_count(const SampledGraph& g, double delta) {
  check_delta(delta);
  if (delta < 2.0 * g.spacing())
    throw std::invalid_argument("box_count: delta below sample resolution");

  const std::int64_t m_lo = static_cast<std::int64_t>(std::floor(g.a / delta));
  std::int64_t m_hi = static_cast<std::int64_t>(std::ceil(g.b / delta)) - 1;
  if (m_hi < m_lo) m_hi = m_lo;

  std::int64_t total = 0;
  std::int64_t col = m_lo;
  double cmin = g.ys[0], cmax = g.ys[0];
  auto flush = [&] {
    const std::int64_t r_lo = static_cast<std::int64_t>(std::floor(cmin / delta));
    const std::int64_t r_hi = static_cast<std::int64_t>(std::floor(cmax / delta));
    total += r_hi - r_lo + 1;
  };

  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double x0 = g.xs[i], x1 = g.xs[i + 1];
    const double y0 = g.ys[i], y1 = g.ys[i + 1];
    std::int64_t c1 = static_cast<std::int64_t>(std::floor(x1 / delta));
    if (c1 > m_hi) c1 = m_hi;
    while (col < c1) {
      const double xb = static_cast<double>(col + 1) * delta;
      const double yb = y0 + (y1 - y0) * ((xb - x0) / (x1 - x0));
      cmin = std::min(cmin, yb);
      cmax = std::max(cmax, yb);
      flush();
      ++col;
      cmin = cmax = yb;
    }
    cmin = std::min(cmin, y1);
    cmax = std::max(cmax, y1);
  }
  flush();
  return total;
}

double oscillation(const SampledGraph& g, double x, double delta) {
  check_delta(delta);
  if (!(x >= g.a - 1e-12 && x <= g.b + 1e-12))
    throw std::invalid_argument("oscillation: x outside the domain");
  const double h = g.spacing();
  std::int64_t lo = static_cast<std::int64_t>(std::ceil((x - delta - g.a) / h - 1e-9));
  std::int64_t hi = static_cast<std::int64_t>(std::floor((x + delta - g.a) / h + 1e-9));
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(g.size()) - 1);
  if (hi - lo + 1 < 2)
    throw std::invalid_argument("oscillation: window contains fewer than 2 samples");
  double mn = g.ys[lo], mx = g.ys[lo];
  for (std::int64_t i = lo + 1; i <= hi; ++i) {
    mn = std::min(mn, g.ys[i]);
    mx = std::max(mx, g.ys[i]);
  }
  return mx - mn;
}

namespace {

// Oscillation over the clipped window [i-w, i+w] for every sample,
// monotone deques keeping amortized O(1) per step.
template <class Emit>
void sliding_oscillation(const SampledGraph& g, std::int64_t w, Emit&& emit) {
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  std::deque<std::int64_t> dmax, dmin;
  std::int64_t r = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t right = std::min(i + w, n - 1);
    const std::int64_t left = std::max(i - w, std::int64_t{0});
    while (r < right) {
      ++r;
      const double y = g.ys[r];
      while (!dmax.empty() && g.ys[dmax.back()] <= y) dmax.pop_back();
      dmax.push_back(r);
      while (!dmin.empty() && g.ys[dmin.back()] >= y) dmin.pop_back();
      dmin.push_back(r);
    }
    while (dmax.front() < left) dmax.pop_front();
    while (dmin.front() < left) dmin.pop_front();
    emit(i, g.ys[dmax.front()] - g.ys[dmin.front()]);
  }
}

double trapezoid(const SampledGraph& g, const std::vector<double>& vals) {
  double sum = 0.0;
  for (double v : vals) sum += v;
  sum -= 0.5 * (vals.front() + vals.back());
  return sum * g.spacing();
}

}  // namespace

double variation(const SampledGraph& g, double delta) {
  const std::int64_t w = window_halfwidth(g, delta);
  if (w < 1)
    throw std::invalid_argument("variation: delta below sample resolution");
  std::vector<double> osc(g.size());
  sliding_oscillation(g, w, [&](std::int64_t i, double v) { osc[i] = v; });
  return trapezoid(g, osc);
}

double modulus_of_continuity(const SampledGraph& g, double delta) {
  // one-sided windows of length delta: sup |f(y)-f(z)| over |y-z| <= delta
  const std::int64_t w = window_halfwidth(g, delta);
  if (w < 1)
    throw std::invalid_argument("modulus_of_continuity: delta below sample resolution");
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  std::deque<std::int64_t> dmax, dmin;
  double best = 0.0;
  for (std::int64_t r = 0; r < n; ++r) {
    const double y = g.ys[r];
    while (!dmax.empty() && g.ys[dmax.back()] <= y) dmax.pop_back();
    dmax.push_back(r);
    while (!dmin.empty() && g.ys[dmin.back()] >= y) dmin.pop_back();
    dmin.push_back(r);
    const std::int64_t left = r - w;
    while (dmax.front() < left) dmax.pop_front();
    while (dmin.front() < left) dmin.pop_front();
    if (r >= w) best = std::max(best, g.ys[dmax.front()] - g.ys[dmin.front()]);
  }
  return best;
}

double shift_lower_functional(const SampledGraph& g, double delta) {
  const std::int64_t w = window_halfwidth(g, delta);
  if (w < 1)
    throw std::invalid_argument("shift_lower_functional: delta below sample resolution");
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  if (n - 1 - 2 * w < 1)
    throw std::invalid_argument("shift_lower_functional: delta too large for the domain");
  double sum = 0.0;
  for (std::int64_t i = w; i <= n - 1 - w; ++i) sum += std::abs(g.ys[i + w] - g.ys[i - w]);
  sum -= 0.5 * (std::abs(g.ys[2 * w] - g.ys[0]) + std::abs(g.ys[n - 1] - g.ys[n - 1 - 2 * w]));
  return sum * g.spacing();
}

std::vector<LadderPoint> scan_ladder(const SampledGraph& g, const DeltaLadder& ladder,
                                     bool with_boxes) {
  ladder.validate_for(g);
  std::vector<LadderPoint> pts;
  for (int n = ladder.n_min; n <= ladder.n_max; ++n) {
    LadderPoint pt;
    pt.n = n;
    pt.delta = std::pow(ladder.base, -n);
    pt.delta_eff = effective_delta(g, pt.delta);
    pt.variation = variation(g, pt.delta);
    pt.boxes = with_boxes ? box_count(g, pt.delta) : 0;
    pts.push_back(pt);
  }
  return pts;
}

namespace {

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
};

Line ols(std::span<const double> x, std::span<const double> y, std::size_t lo, std::size_t hi) {
  const double n = static_cast<double>(hi - lo + 1);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Line l;
  l.slope = sxy / sxx;
  l.intercept = my - l.slope * mx;
  double ssres = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double r = y[i] - (l.intercept + l.slope * x[i]);
    ssres += r * r;
  }
  l.r2 = syy > 0.0 ? std::max(0.0, 1.0 - ssres / syy) : 1.0;
  return l;
}

// OLS with residual-trimmed endpoints: drop a leading/trailing scale whose
// residual exceeds 3x the interior RMS, never below 4 points.
ScalingFit fit_window(std::span<const double> x, std::span<const double> y, int n_min) {
  if (x.size() < 4)
    throw std::invalid_argument("scaling fit: fewer than 4 usable ladder points");
  std::size_t lo = 0, hi = x.size() - 1;
  Line line;
  while (true) {
    line = ols(x, y, lo, hi);
    if (hi - lo + 1 <= 4) break;
    double rms = 0.0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double r = y[i] - (line.intercept + line.slope * x[i]);
      rms += r * r;
    }
    rms = std::sqrt(rms / static_cast<double>(hi - lo - 1));
    const double thr = 3.0 * rms + 1e-12;
    const double e_lo = std::abs(y[lo] - (line.intercept + line.slope * x[lo]));
    const double e_hi = std::abs(y[hi] - (line.intercept + line.slope * x[hi]));
    if (e_lo > thr && e_lo >= e_hi)
      ++lo;
    else if (e_hi > thr)
      --hi;
    else
      break;
  }
  line = ols(x, y, lo, hi);
  ScalingFit fit;
  fit.slope = line.slope;
  fit.r_squared = line.r2;
  fit.window_lo = n_min + static_cast<int>(lo);
  fit.window_hi = n_min + static_cast<int>(hi);
  for (std::size_t i = lo; i <= hi; ++i)
    fit.residuals.push_back(y[i] - (line.intercept + line.slope * x[i]));
  return fit;
}

ScalingFit finish(ScalingFit fit, double dimension) {
  fit.dimension = dimension;
  fit.out_of_range = dimension < 1.0 || dimension > 2.0;
  return fit;
}

}  // namespace

ScalingFit fit_variation_points(std::span<const LadderPoint> pts) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    if (!(p.variation > 0.0))
      throw std::domain_error("fit_dimension_variation: zero variation at a ladder scale");
    x.push_back(std::log(p.delta_eff));
    y.push_back(std::log(p.variation));
  }
  ScalingFit fit = fit_window(x, y, pts.front().n);
  return finish(fit, 2.0 - fit.slope);
}

ScalingFit fit_boxcount_points(std::span<const LadderPoint> pts) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(std::log(1.0 / p.delta));
    y.push_back(std::log(static_cast<double>(p.boxes)));
  }
  ScalingFit fit = fit_window(x, y, pts.front().n);
  return finish(fit, fit.slope);
}

ScalingFit fit_modulus_points(std::span<const double> delta_eff, std::span<const double> sup_osc,
                              int n_min) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < delta_eff.size(); ++i) {
    if (!(sup_osc[i] > 0.0))
      throw std::domain_error("fit_modulus_points: zero oscillation at a ladder scale");
    x.push_back(std::log(delta_eff[i]));
    y.push_back(std::log(sup_osc[i]));
  }
  ScalingFit fit = fit_window(x, y, n_min);
  return finish(fit, 2.0 - fit.slope);
}

ScalingFit fit_dimension_variation(const SampledGraph& g, const DeltaLadder& ladder) {
  if (g.is_constant())
    throw std::domain_error(
        "fit_dimension_variation: constant graph (variation method needs a non-constant "
        "function)");
  return fit_variation_points(scan_ladder(g, ladder, false));
}

ScalingFit fit_dimension_boxcount(const SampledGraph& g, const DeltaLadder& ladder) {
  if (g.is_constant()) {
    ladder.validate_for(g);
    ScalingFit fit;
    fit.slope = 1.0;
    fit.dimension = 1.0;
    fit.r_squared = 1.0;
    fit.window_lo = ladder.n_min;
    fit.window_hi = ladder.n_max;
    return fit;
  }
  return fit_boxcount_points(scan_ladder(g, ladder, true));
}

std::pair<double, double> sandwich_check(const SampledGraph& g, double delta) {
  if (g.is_constant())
    throw std::domain_error("sandwich_check: constant graph has zero variation");
  const double n = static_cast<double>(box_count(g, delta));
  const double v_wide = variation(g, delta * std::sqrt(2.0));
  const double v = variation(g, delta);
  if (!(v > 0.0) || !(v_wide > 0.0))
    throw std::domain_error("sandwich_check: zero variation at this scale");
  return {delta * delta * n / v_wide, delta * delta * n / v};
}

double surface_dimension(std::span<const ScalingFit> x_sections,
                         std::span<const ScalingFit> t_sections) {
  if (x_sections.empty() || t_sections.empty())
    throw std::invalid_argument("surface_dimension: needs sections along both axes");
  auto sup = [](std::span<const ScalingFit> fits) {
    double m = fits.front().dimension;
    for (const auto& f : fits) m = std::max(m, f.dimension);
    return m;
  };
  return 1.0 + std::max(sup(x_sections), sup(t_sections));
}

}  // namespace fwell
