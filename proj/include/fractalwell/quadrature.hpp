#pragma once

#include <cstdint>
#include <stdexcept>

namespace fwell {

// Composite Simpson weights 1,4,2,...,2,4,1 over node indices 0..n. The
// caller multiplies the returned sum by h/3.
template <class F>
double simpson_weighted_sum(std::int64_t n, F&& f) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("simpson: interval count must be even and >= 2");
  double s = f(std::int64_t{0}) + f(n);
  for (std::int64_t i = 1; i < n; i += 2) s += 4.0 * f(i);
  for (std::int64_t i = 2; i < n; i += 2) s += 2.0 * f(i);
  return s;
}

template <class F>
double simpson(double a, double b, std::int64_t n, F&& f) {
  const double h = (b - a) / static_cast<double>(n);
  const double s = simpson_weighted_sum(n, [&](std::int64_t i) { return f(a + i * h); });
  return s * h / 3.0;
}

}  // namespace fwell
