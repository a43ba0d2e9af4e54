#pragma once

#include <complex>
#include <cstddef>

#include "mirrorqed/core/params.hpp"
#include "mirrorqed/core/piecewise_polynomial.hpp"

namespace mirrorqed {

namespace detail {

inline std::size_t half_order(int n) {
  if (n < 0 || n % 2 != 0) throw ConfigError("Dyson coefficient order must be even and >= 0");
  return static_cast<std::size_t>(n / 2);
}

/// r_m exp(i omega_e tau): the weight of one delayed reabsorption.
inline complex round_trip_weight(const SystemParams& p) {
  return p.r_m * std::exp(kI * p.round_trip_phase());
}

}  // namespace detail

/**
 * Closed-form even Dyson coefficient c_n(t),
 *
 *   c_n(t) = (-1)^m |g|^{2m} / (m! c^m) sum_k C(m,k) w^k Theta(t - k tau) (t - k tau)^m,
 *
 * with m = n / 2 and w = r_m exp(i omega_e tau). Theta(0) = 1.
 */
inline complex dyson_coefficient_closed(const SystemParams& p, int n, double t) {
  const std::size_t m = detail::half_order(n);
  const complex w = detail::round_trip_weight(p);
  const double g2 = p.coupling_squared();

  double prefactor = (m % 2 == 0) ? 1.0 : -1.0;
  for (std::size_t j = 1; j <= m; ++j) prefactor *= g2 / static_cast<double>(j);

  complex sum{};
  double binom = 1.0;
  complex wk{1.0, 0.0};
  for (std::size_t k = 0; k <= m; ++k) {
    const double s = t - static_cast<double>(k) * p.tau;
    if (s >= 0.0) sum += binom * wk * std::pow(s, static_cast<double>(m));
    binom = binom * static_cast<double>(m - k) / static_cast<double>(k + 1);
    wk *= w;
  }
  return prefactor * sum;
}

/**
 * Even Dyson coefficient c_n as a piecewise polynomial on the round-trip
 * lattice, built from c_0 = 1 by
 *
 *   c_{n+2}(t) = -(|g|^2 / c) [ I_n(t) + w Theta(t - tau) I_n(t - tau) ],
 *
 * where I_n is the antiderivative of c_n from zero.
 */
inline PiecewisePolynomial dyson_coefficient_iterative(const SystemParams& p, int n) {
  const std::size_t m = detail::half_order(n);
  const complex w = detail::round_trip_weight(p);
  const double g2 = p.coupling_squared();

  PiecewisePolynomial c = PiecewisePolynomial::constant(1.0, p.tau);
  for (std::size_t step = 0; step < m; ++step) {
    const PiecewisePolynomial integral = pp_integrate(c);
    c = complex{-g2, 0.0} * (integral + w * pp_shift(integral, p.tau));
  }
  return c;
}

}  // namespace mirrorqed
