#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fractalwell/rational.hpp"

namespace fwell {

/*
 * Exact trigonometric argument reduction for lacunary phases.
 *
 * Evaluating sin(q^n x) naively loses all precision once q^n x overflows the
 * 53-bit mantissa (q = 2, n ~ 30 already fails badly). Two reduction paths:
 *
 *  - x supplied as an exact rational multiple of pi, x = (a/b)*pi: the phase
 *    q^n x mod 2*pi is pi*(a*q^n mod 2b)/b, kept in integer arithmetic.
 *  - x a plain double: the phase is tracked as a double-double fraction of a
 *    full turn, u = q^n * x/(2*pi) mod 1, remultiplied and reduced one factor
 *    of q at a time. Roughly 106 effective mantissa bits, so the error after
 *    n steps is ~ q^n * 2^-106.
 */

// Double-double value hi + lo, |lo| <= ulp(hi)/2.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
  const double s = a + b;
  return {s, b - (s - a)};
}

// Dekker product via Veltkamp splitting; no FMA hardware assumed.
inline DD two_prod(double a, double b) {
  constexpr double kSplit = 134217729.0;  // 2^27 + 1
  const double p = a * b;
  const double ta = kSplit * a, tb = kSplit * b;
  const double ahi = ta - (ta - a), bhi = tb - (tb - b);
  const double alo = a - ahi, blo = b - bhi;
  return {p, ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo};
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_sub(DD a, DD b) {
  DD s = two_sum(a.hi, -b.hi);
  s.lo += a.lo - b.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return quick_two_sum(p.hi, p.lo);
}

// Fractional part in [0,1). Exact as long as the integer part fits a double.
inline DD dd_frac(DD a) {
  DD r = quick_two_sum(a.hi - std::floor(a.hi), a.lo);
  if (r.hi < 0.0) r = dd_add(r, 1.0);
  if (r.hi >= 1.0) r = dd_add(r, -1.0);
  return r;
}

// An angle in radians, optionally known exactly as (num/den)*pi.
struct Angle {
  double value = 0.0;
  bool exact = false;
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Angle from_real(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("Angle: non-finite value");
    Angle a;
    a.value = v;
    return a;
  }
  static Angle pi_times(std::int64_t num, std::int64_t den) {
    const Rational r(num, den);
    Angle a;
    a.exact = true;
    a.num = r.num;
    a.den = r.den;
    a.value = M_PI * r.value();
    return a;
  }
  static Angle pi_times(const Rational& r) { return pi_times(r.num, r.den); }
  static Angle zero() { return pi_times(0, 1); }
};

// sin(pi * m/den) for m in [0, 2*den). m == 0 and m == den return exact zeros,
// which keeps the vanishing terms of lacunary sums identically zero.
inline double sin_pi_frac(std::uint64_t m, std::uint64_t den) {
  if (m == 0 || m == den) return 0.0;
  const double v = m < den ? static_cast<double>(m) / static_cast<double>(den)
                           : (static_cast<double>(m) - 2.0 * static_cast<double>(den)) /
                                 static_cast<double>(den);
  return std::sin(M_PI * v);
}

inline double cos_pi_frac(std::uint64_t m, std::uint64_t den) {
  if (m == 0) return 1.0;
  if (m == den) return -1.0;
  const double v = m < den ? static_cast<double>(m) / static_cast<double>(den)
                           : (static_cast<double>(m) - 2.0 * static_cast<double>(den)) /
                                 static_cast<double>(den);
  return std::cos(M_PI * v);
}

// Phase k*theta for a running integer multiplier k, reduced mod 2*pi at every
// step. scale(f) replaces k by k*f.
class PhaseSeq {
 public:
  explicit PhaseSeq(const Angle& theta) {
    exact_ = theta.exact;
    if (exact_) {
      den_ = static_cast<std::uint64_t>(theta.den);
      mod_ = 2 * den_;
      std::int64_t n = theta.num % static_cast<std::int64_t>(mod_);
      if (n < 0) n += static_cast<std::int64_t>(mod_);
      m_ = static_cast<std::uint64_t>(n);
    } else {
      // 1/(2*pi) to double-double precision
      DD u = two_prod(theta.value, 0.15915494309189535);
      u.lo += theta.value * -9.839338337591243e-18;
      u = quick_two_sum(u.hi, u.lo);
      u_ = dd_frac(u);
    }
  }

  void scale(std::int64_t f) {
    if (f < 0) throw std::invalid_argument("PhaseSeq::scale: negative multiplier");
    if (exact_) {
      m_ = mulmod(m_, static_cast<std::uint64_t>(f) % mod_, mod_);
    } else {
      u_ = dd_frac(dd_mul(u_, static_cast<double>(f)));
    }
  }

  // Phase difference this - other; both must track the same base angle.
  PhaseSeq minus(const PhaseSeq& o) const {
    PhaseSeq r(*this);
    if (exact_) {
      if (!o.exact_ || o.mod_ != mod_)
        throw std::invalid_argument("PhaseSeq::minus: mismatched base angle");
      r.m_ = (m_ + mod_ - o.m_) % mod_;
    } else {
      if (o.exact_) throw std::invalid_argument("PhaseSeq::minus: mismatched base angle");
      r.u_ = dd_frac(dd_sub(u_, o.u_));
    }
    return r;
  }

  double sin() const { return exact_ ? sin_pi_frac(m_, den_) : std::sin(radians()); }
  double cos() const { return exact_ ? cos_pi_frac(m_, den_) : std::cos(radians()); }

  void sincos(double& s, double& c) const {
    if (exact_) {
      s = sin_pi_frac(m_, den_);
      c = cos_pi_frac(m_, den_);
    } else {
      const double ph = radians();
      s = std::sin(ph);
      c = std::cos(ph);
    }
  }

 private:
  double radians() const {
    // recenter to [-0.5, 0.5) turns so the plain-double phase needs no
    // further reduction
    DD w = u_.hi >= 0.5 ? dd_add(u_, -1.0) : u_;
    return 6.283185307179586 * w.hi + (6.283185307179586 * w.lo + 2.4492935982947064e-16 * w.hi);
  }

  bool exact_ = false;
  std::uint64_t m_ = 0;    // exact: multiplier*num mod 2*den
  std::uint64_t mod_ = 2;  // exact: 2*den
  std::uint64_t den_ = 1;
  DD u_;  // inexact: phase in turns, [0,1)
};

}  // namespace fwell
