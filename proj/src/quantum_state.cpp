#include "fractalwell/quantum_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fractalwell/quadrature.hpp"

namespace fwell {

namespace {

void check_angles(const StateParams& p, const Angle& x, const Angle& t, bool x_in_well) {
  p.validate();
  if (!std::isfinite(x.value) || !std::isfinite(t.value))
    throw std::invalid_argument("quantum_state: non-finite coordinate");
  if (x_in_well) {
    const bool ok = x.exact ? (x.num >= 0 && x.num <= x.den)
                            : (x.value >= -1e-12 && x.value <= M_PI + 1e-12);
    if (!ok) throw std::invalid_argument("quantum_state: x outside [0, pi]");
  }
}

double coeff_sum(const StateParams& p) {  // sum_{n=0}^{M} q^{2n(s-2)}
  const double r = std::pow(static_cast<double>(p.q), 2.0 * (p.s - 2.0));
  double sum = 0.0, w = 1.0;
  for (int n = 0; n <= p.M; ++n) {
    sum += w;
    w *= r;
  }
  return sum;
}

}  // namespace

void StateParams::validate() const {
  if (q < 2) throw std::invalid_argument("StateParams: q must be an integer >= 2");
  if (!(s > 0.0 && s < 2.0)) throw std::invalid_argument("StateParams: s must lie in (0, 2)");
  if (M < 0) throw std::invalid_argument("StateParams: M must be >= 0");
}

double norm_constant(const StateParams& p) {
  p.validate();
  return std::sqrt((2.0 / M_PI) / coeff_sum(p));
}

double norm_constant_infinite(const StateParams& p) {
  p.validate();
  const double r = std::pow(static_cast<double>(p.q), 2.0 * (p.s - 2.0));
  return std::sqrt(2.0 / M_PI * (1.0 - r));
}

std::complex<double> eval_psi_raw(const StateParams& p, const Angle& x, const Angle& t) {
  check_angles(p, x, t, true);
  PhaseSeq xs(x);
  PhaseSeq ts(t);
  const double step = std::pow(static_cast<double>(p.q), p.s - 2.0);
  const std::int64_t q2 = p.q * p.q;
  double re = 0.0, im = 0.0, w = 1.0;
  for (int n = 0; n <= p.M; ++n) {
    const double sn = xs.sin();
    if (sn != 0.0) {  // keeps vanished terms exactly inert
      double st, ct;
      ts.sincos(st, ct);
      re += w * sn * ct;
      im -= w * sn * st;
    }
    w *= step;
    xs.scale(p.q);
    ts.scale(q2);
  }
  return {re, im};
}

std::complex<double> eval_psi(const StateParams& p, const Angle& x, const Angle& t) {
  return norm_constant(p) * eval_psi_raw(p, x, t);
}

double prob_density(const StateParams& p, const Angle& x, const Angle& t) {
  return std::norm(eval_psi(p, x, t));
}

double prob_density_grouped(const StateParams& p, const Angle& x, const Angle& t) {
  check_angles(p, x, t, true);
  const int M = p.M;
  std::vector<double> sx(M + 1);
  std::vector<PhaseSeq> tp;
  tp.reserve(M + 1);
  {
    PhaseSeq xs(x);
    PhaseSeq ts(t);
    const std::int64_t q2 = p.q * p.q;
    for (int n = 0; n <= M; ++n) {
      sx[n] = xs.sin();
      tp.push_back(ts);
      xs.scale(p.q);
      ts.scale(q2);
    }
  }
  const double step = std::pow(static_cast<double>(p.q), p.s - 2.0);
  double total = 0.0, wk = 1.0;
  for (int k = 0; k <= 2 * M; ++k) {
    double inner = 0.0;
    const int lo = std::max(0, k - M), hi = std::min(k, M);
    for (int l = lo; l <= hi; ++l)
      inner += sx[l] * sx[k - l] * tp[l].minus(tp[k - l]).cos();
    total += wk * inner;
    wk *= step;
  }
  const double nm = norm_constant(p);
  return nm * nm * total;
}

double prob_density_dt(const StateParams& p, const Angle& x, const Angle& t) {
  check_angles(p, x, t, true);
  // dP/dt = 2 Re(conj(psi) dpsi/dt), dpsi/dt term n carries -i q^{2n}
  PhaseSeq xs(x);
  PhaseSeq ts(t);
  const double step = std::pow(static_cast<double>(p.q), p.s - 2.0);
  const std::int64_t q2 = p.q * p.q;
  double re = 0.0, im = 0.0, dre = 0.0, dim = 0.0;
  double w = 1.0, omega = 1.0;
  for (int n = 0; n <= p.M; ++n) {
    const double sn = xs.sin();
    if (sn != 0.0) {
      double st, ct;
      ts.sincos(st, ct);
      re += w * sn * ct;
      im -= w * sn * st;
      // -i*omega*(ct - i*st) = -omega*st - i*omega*ct
      dre -= w * sn * omega * st;
      dim -= w * sn * omega * ct;
    }
    w *= step;
    omega *= static_cast<double>(q2);
    xs.scale(p.q);
    ts.scale(q2);
  }
  const double nm = norm_constant(p);
  return 2.0 * nm * nm * (re * dre + im * dim);
}

double time_independent_part(const StateParams& p, const Angle& x) {
  check_angles(p, x, Angle::zero(), true);
  PhaseSeq xs(x);
  xs.scale(2);
  const double step = std::pow(static_cast<double>(p.q), 2.0 * p.s - 4.0);
  double sum = 0.0, w = 1.0;
  for (int n = 0; n <= p.M; ++n) {
    sum += w * xs.cos();
    w *= step;
    xs.scale(p.q);
  }
  const double nm = norm_constant(p);
  return 1.0 / M_PI - 0.5 * nm * nm * sum;
}

double time_independent_dimension(const StateParams& p) {
  p.validate();
  return std::max(2.0 * p.s - 2.0, 1.0);
}

std::vector<SpectrumLine> spectrum(const StateParams& p) {
  p.validate();
  std::vector<SpectrumLine> lines;
  for (std::int64_t c = 1; c <= p.M; ++c) {
    const std::int64_t qc = checked_pow(p.q, static_cast<int>(2 * c));
    for (std::int64_t d = 1; d <= c; ++d) {
      const std::int64_t qcd = checked_pow(p.q, static_cast<int>(2 * (c - d)));
      lines.push_back({c, d, qc - qcd});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const SpectrumLine& a, const SpectrumLine& b) { return a.omega < b.omega; });
  return lines;
}

double fundamental_period(const StateParams& p) {
  p.validate();
  return 2.0 * M_PI / static_cast<double>(p.q * p.q - 1);
}

namespace {

// Common series core for <x> and d<x>/dt. Terms carry frequency q^{2k}-1.
template <class Term>
double position_series(const StateParams& p, const Angle& t, Term&& term) {
  check_angles(p, Angle::zero(), t, false);
  if (p.q % 2 != 0) return 0.0;
  const PhaseSeq base{t};
  PhaseSeq pw{t};
  const std::int64_t q2 = p.q * p.q;
  const double cs = std::pow(static_cast<double>(p.q), p.s - 1.0);
  double sum = 0.0, w = 1.0, q2k = 1.0;
  for (int k = 1; k <= p.M; ++k) {
    w *= cs;
    q2k *= static_cast<double>(q2);
    pw.scale(q2);
    if (w / ((q2k - 1.0) * (q2k - 1.0)) < 1e-300) break;
    sum += term(w, q2k, pw.minus(base));
  }
  const double r = std::pow(static_cast<double>(p.q), 2.0 * (p.s - 2.0));
  return 16.0 / M_PI * (1.0 - r) * sum;
}

}  // namespace

double mean_position(const StateParams& p, const Angle& t) {
  const double tail = position_series(
      p, t, [](double w, double q2k, const PhaseSeq& ph) {
        return w / ((q2k - 1.0) * (q2k - 1.0)) * ph.cos();
      });
  return M_PI / 2.0 - tail;
}

double mean_velocity(const StateParams& p, const Angle& t) {
  return position_series(p, t, [](double w, double q2k, const PhaseSeq& ph) {
    return w / (q2k - 1.0) * ph.sin();
  });
}

double mean_velocity_bound(const StateParams& p) {
  p.validate();
  if (p.q % 2 != 0) return 0.0;
  const double cs = std::pow(static_cast<double>(p.q), p.s - 1.0);
  double sum = 0.0, w = 1.0, q2k = 1.0;
  for (int k = 1; k <= p.M; ++k) {
    w *= cs;
    q2k *= static_cast<double>(p.q * p.q);
    sum += w / (q2k - 1.0);
  }
  const double r = std::pow(static_cast<double>(p.q), 2.0 * (p.s - 2.0));
  return 16.0 / M_PI * (1.0 - r) * sum;
}

std::vector<double> sine_coefficients(const StateParams& p, int n_max,
                                      std::int64_t grid_points) {
  p.validate();
  if (n_max < 1) throw std::invalid_argument("sine_coefficients: n_max must be >= 1");
  std::int64_t top;
  try {
    top = checked_pow(p.q, p.M);
  } catch (const std::overflow_error&) {
    throw std::invalid_argument("sine_coefficients: q^M too large for quadrature");
  }
  const std::int64_t max_freq = top + n_max;
  if (grid_points == 0) {
    grid_points = 128 * max_freq;
    if (grid_points < 4096) grid_points = 4096;
  }
  if (grid_points % 2) ++grid_points;
  if (grid_points < 16 * max_freq)
    throw std::invalid_argument(
        "sine_coefficients: quadrature grid too coarse for requested n_max");
  if (grid_points > (std::int64_t{1} << 26))
    throw std::invalid_argument("sine_coefficients: quadrature grid infeasibly large");

  std::vector<double> psi0(grid_points + 1);
  for (std::int64_t i = 0; i <= grid_points; ++i)
    psi0[i] = eval_psi(p, Angle::pi_times(i, grid_points), Angle::zero()).real();

  const double h = M_PI / static_cast<double>(grid_points);
  std::vector<double> a(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double s = simpson_weighted_sum(grid_points, [&](std::int64_t i) {
      return sin_pi_frac(static_cast<std::uint64_t>(i) * n % (2 * grid_points),
                         grid_points) *
             psi0[i];
    });
    a[n - 1] = 2.0 / M_PI * s * h / 3.0;
  }
  return a;
}

const char* variant_name(VariantKind k) {
  switch (k) {
    case VariantKind::Phi0: return "phi0";
    case VariantKind::Phi1: return "phi1";
    case VariantKind::Phi2: return "phi2";
    case VariantKind::Phi3: return "phi3";
  }
  return "?";
}

VariantState make_variant(const VariantSpec& spec, const StateParams& p) {
  p.validate();
  if (spec.kind == VariantKind::Phi0 && spec.phi0_sign != 1 && spec.phi0_sign != -1)
    throw std::invalid_argument("make_variant: Phi0 sign must be +1 or -1");

  std::vector<std::pair<std::int64_t, double>> terms;
  const double cs = std::pow(static_cast<double>(p.q), p.s - 2.0);
  std::mt19937_64 gen(spec.phi0_seed.value_or(0));

  if (spec.kind == VariantKind::Phi1 || spec.kind == VariantKind::Phi2)
    terms.emplace_back(2, std::pow(2.0, p.s - 2.0));

  const int n0 = spec.kind == VariantKind::Phi2 ? 0 : 1;
  double w = n0 == 0 ? 1.0 : cs;
  for (int n = n0; n <= p.M; ++n) {
    std::int64_t k = checked_pow(p.q, n);
    if (spec.kind == VariantKind::Phi0) {
      int sign = spec.phi0_sign;
      if (spec.phi0_seed) sign = (gen() & 1) ? 1 : -1;
      k += sign;
    }
    if (k >= 1) terms.emplace_back(k, w);
    w *= cs;
  }

  std::sort(terms.begin(), terms.end());
  VariantState st;
  st.q = p.q;
  st.s = p.s;
  st.M = p.M;
  for (const auto& [k, c] : terms) {
    if (!st.wavenumbers.empty() && st.wavenumbers.back() == k)
      st.coeffs.back() += c;  // merged eigenmodes share the energy k^2
    else {
      st.wavenumbers.push_back(k);
      st.coeffs.push_back(c);
    }
  }
  double c2 = 0.0;
  for (double c : st.coeffs) c2 += c * c;
  st.norm = std::sqrt(2.0 / (M_PI * c2));
  return st;
}

std::complex<double> eval_variant(const VariantState& st, const Angle& x, const Angle& t) {
  if (!std::isfinite(x.value) || !std::isfinite(t.value))
    throw std::invalid_argument("eval_variant: non-finite coordinate");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < st.wavenumbers.size(); ++i) {
    const std::int64_t k = st.wavenumbers[i];
    PhaseSeq xs(x);
    xs.scale(k);
    const double sn = xs.sin();
    if (sn == 0.0) continue;
    PhaseSeq ts(t);
    ts.scale(k);
    ts.scale(k);  // omega = k^2, squared in two steps to dodge overflow
    double stv, ctv;
    ts.sincos(stv, ctv);
    re += st.coeffs[i] * sn * ctv;
    im -= st.coeffs[i] * sn * stv;
  }
  return st.norm * std::complex<double>(re, im);
}

}  // namespace fwell
