#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "mirrorqed/core/compensated_sum.hpp"

namespace mirrorqed::detail {

/// (a s)^k / k! without forming a^k or k! separately.
inline std::complex<double> power_over_factorial(std::complex<double> a, double s, std::size_t k) {
  if (k == 0) return {1.0, 0.0};
  const std::complex<double> w = a * s;
  if (w == std::complex<double>{}) return {};
  if (k <= 64) {
    std::complex<double> term{1.0, 0.0};
    for (std::size_t j = 1; j <= k; ++j) term *= w / static_cast<double>(j);
    return term;
  }
  const double kd = static_cast<double>(k);
  const double log_mag = kd * std::log(std::abs(w)) - std::lgamma(kd + 1.0);
  if (log_mag < -745.0) return {};
  return std::polar(std::exp(log_mag), kd * std::arg(w));
}

/// Largest k with k * tau <= t (tau > 0, t >= 0).
inline std::size_t round_trips_completed(double t, double tau) {
  double k = std::floor(t / tau);
  if ((k + 1.0) * tau <= t) k += 1.0;
  if (k > 0.0 && k * tau > t) k -= 1.0;
  return static_cast<std::size_t>(k);
}

/**
 * f(t) = sum_{k=0}^{floor(t/tau)} a^k / k! (t - k tau)^k, the round-trip sum
 * multiplying exp(-i Omega t) in the excited-state amplitude. f is zero for
 * t < 0. Terms are summed with Neumaier compensation; once k exceeds |a| t
 * the bound (|a| t)^k / k! decreases monotonically and the sum stops when it
 * falls below the resolution of the largest term seen.
 */
inline std::complex<double> round_trip_sum(std::complex<double> a, double tau, double t) {
  if (t < 0.0) return {};
  const std::size_t n = round_trips_completed(t, tau);
  const double at = std::abs(a) * t;
  ComplexNeumaierSum sum;
  double largest = 1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = t - static_cast<double>(k) * tau;
    const std::complex<double> term = power_over_factorial(a, s, k);
    sum.add(term);
    const double mag = std::abs(term);
    if (mag > largest) largest = mag;
    if (static_cast<double>(k) > at && k >= 1) {
      const double bound = std::abs(power_over_factorial({at, 0.0}, 1.0, k));
      if (bound < 1e-20 * largest) break;
    }
  }
  return sum.value();
}

}  // namespace mirrorqed::detail
