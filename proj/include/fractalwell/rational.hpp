#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fwell {

// Modular helpers on 64-bit operands; intermediates go through 128 bits.
inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

// base^exp as int64, throwing instead of wrapping.
inline std::int64_t checked_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r))
      throw std::overflow_error("checked_pow: " + std::to_string(base) + "^" +
                                std::to_string(exp) + " exceeds 64 bits");
  }
  return r;
}

// Exact rational on int64. Always reduced, den > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Rational: 64-bit overflow");
    return static_cast<std::int64_t>(v);
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
  }

  friend Rational operator+(const Rational& x, const Rational& y) {
    return from_wide((__int128)x.num * y.den + (__int128)y.num * x.den, (__int128)x.den * y.den);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return from_wide((__int128)x.num * y.den - (__int128)y.num * x.den, (__int128)x.den * y.den);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return from_wide((__int128)x.num * y.num, (__int128)x.den * y.den);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num == 0) throw std::invalid_argument("Rational: division by zero");
    return from_wide((__int128)x.num * y.den, (__int128)x.den * y.num);
  }
  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num == y.num && x.den == y.den;
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return (__int128)x.num * y.den < (__int128)y.num * x.den;
  }

  // Accepts "a/b" or a bare integer "a".
  static Rational parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text), 1);
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("Rational: cannot parse \"" + text + "\"");
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("Rational: \"" + text + "\" out of 64-bit range");
    }
  }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

}  // namespace fwell
