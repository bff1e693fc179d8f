#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "fractalwell/phase.hpp"

namespace fwell {

/*
 * Truncated Weierstrass quantum state in the infinite well on [0, pi]:
 *
 *   Psi_M(x,t) = N_M sum_{n=0}^{M} q^{n(s-2)} sin(q^n x) exp(-i q^{2n} t)
 *
 * with integer base q >= 2 and dimension parameter 0 < s < 2. N_M gives the
 * truncated state unit L2 norm, so normalization holds exactly at every M.
 */
struct StateParams {
  std::int64_t q = 2;
  double s = 1.5;
  int M = 10;

  void validate() const;
};

double norm_constant(const StateParams& p);           // N_M
double norm_constant_infinite(const StateParams& p);  // N of the infinite series

// The series sum without N_M. At x = m*pi/q^k every term with n >= k carries
// an exact zero sine, so truncations beyond k-1 agree bit for bit.
std::complex<double> eval_psi_raw(const StateParams& p, const Angle& x, const Angle& t);
std::complex<double> eval_psi(const StateParams& p, const Angle& x, const Angle& t);

double prob_density(const StateParams& p, const Angle& x, const Angle& t);

// |Psi_M|^2 expanded as the k = n+m regrouped double sum, truncated at
// k <= 2M with both indices <= M; algebraically identical to prob_density.
double prob_density_grouped(const StateParams& p, const Angle& x, const Angle& t);

// Analytic time derivative of the probability density.
double prob_density_dt(const StateParams& p, const Angle& x, const Angle& t);

// Time-independent component of |Psi_M|^2:
//   P_x(x) = 1/pi - (N_M^2/2) sum_{n=0}^{M} q^{n(2s-4)} cos(2 q^n x)
double time_independent_part(const StateParams& p, const Angle& x);
double time_independent_dimension(const StateParams& p);  // s' = max{2s-2, 1}

// Spectral line of the density: omega_{c,d} = q^{2c} - q^{2(c-d)},
// equivalently (q^2-1)(q^{2(c-1)} + ... + q^{2(c-d)}).
struct SpectrumLine {
  std::int64_t c = 0;
  std::int64_t d = 0;
  std::int64_t omega = 0;
};

// All lines with 1 <= d <= c <= M, ascending in omega, exact integers.
std::vector<SpectrumLine> spectrum(const StateParams& p);

double fundamental_period(const StateParams& p);  // 2*pi/(q^2-1)

// <x>(t) = pi/2 - (16/pi)(1-q^{2(s-2)}) sum_{k=1}^{M} q^{k(s-1)}/(q^{2k}-1)^2
//          * cos((q^{2k}-1) t)          for even q; pi/2 for odd q.
double mean_position(const StateParams& p, const Angle& t);
double mean_velocity(const StateParams& p, const Angle& t);
double mean_velocity_bound(const StateParams& p);  // termwise absolute bound

// Fourier sine coefficients a_n of Psi(x,0) by Simpson quadrature,
// n = 1..n_max. grid_points == 0 picks a grid resolving n_max + q^M.
std::vector<double> sine_coefficients(const StateParams& p, int n_max,
                                      std::int64_t grid_points = 0);

// Variant states from the appendix table. Phi0 displaces every wavenumber by
// +-1; the sign is global unless a seed requests per-term random signs.
enum class VariantKind { Phi0, Phi1, Phi2, Phi3 };

struct VariantSpec {
  VariantKind kind = VariantKind::Phi3;
  int phi0_sign = +1;
  std::optional<std::uint64_t> phi0_seed;
};

struct VariantState {
  std::int64_t q = 2;
  double s = 1.5;
  int M = 10;
  std::vector<std::int64_t> wavenumbers;  // distinct, ascending
  std::vector<double> coeffs;             // merged, unnormalized
  double norm = 1.0;                      // unit L2 norm over the merged list
};

VariantState make_variant(const VariantSpec& spec, const StateParams& p);
std::complex<double> eval_variant(const VariantState& st, const Angle& x, const Angle& t);

const char* variant_name(VariantKind k);

}  // namespace fwell
