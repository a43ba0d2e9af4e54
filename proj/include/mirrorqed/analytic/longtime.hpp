#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "mirrorqed/analytic/series.hpp"
#include "mirrorqed/core/params.hpp"

namespace mirrorqed {

/**
 * f(t) = sum_{k >= 0} a^k / k! (t - k tau)^k with every step function set to
 * one, i.e. the round-trip sum continued past the causal cut-off. At t = 0 it
 * is xi0. Summation stops once a term drops below `term_tolerance`; eight
 * consecutive growing terms (or `max_terms` terms) raise Xi0Diverges.
 */
inline complex delay_series(complex a, double tau, double t, double term_tolerance = 1e-14,
                            std::size_t max_terms = 200000) {
  ComplexNeumaierSum sum;
  double previous = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const double s = t - static_cast<double>(k) * tau;
    const complex term = detail::power_over_factorial(a, s, k);
    sum.add(term);
    const double mag = std::abs(term);
    if (k > 0 && mag < term_tolerance) return sum.value();
    growing = (mag > previous) ? growing + 1 : 0;
    if (growing >= 8) throw Xi0Diverges("delay series terms grow: round trip too long for a single exponential");
    previous = mag;
  }
  throw Xi0Diverges("delay series did not converge within " + std::to_string(max_terms) + " terms");
}

/**
 * Root of xi exp(xi tau) = a by damped Newton from xi = a: a step that
 * increases the residual is halved. The root reached is the one continuously
 * connected to xi = a as tau -> 0.
 */
inline complex longtime_exponent(const SystemParams& p) {
  const complex a = derived_constants(p).a;
  const double tau = p.tau;
  if (tau == 0.0) return a;

  const double tolerance = 1e-12 * std::max(1.0, std::abs(a));
  auto residual = [&](complex xi) { return xi * std::exp(xi * tau) - a; };

  complex xi = a;
  complex r = residual(xi);
  bool converged = std::abs(r) <= tolerance;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    const complex slope = std::exp(xi * tau) * (1.0 + xi * tau);
    if (std::abs(slope) == 0.0) break;
    const complex step = r / slope;
    double damping = 1.0;
    complex candidate = xi - step;
    complex candidate_r = residual(candidate);
    for (int halvings = 0; halvings < 40 && !(std::abs(candidate_r) < std::abs(r)); ++halvings) {
      damping *= 0.5;
      candidate = xi - damping * step;
      candidate_r = residual(candidate);
    }
    xi = candidate;
    r = candidate_r;
    converged = std::isfinite(std::abs(r)) && std::abs(r) <= tolerance;
  }
  if (!converged)
    throw NoLongtimeSolution("no root of xi*exp(xi*tau) = a reached from xi = a in 200 Newton steps");
  return xi;
}

/// Fills xi and xi0 (long-time prefactor, the delay series at t = 0).
inline DerivedConstants solve_longtime(const SystemParams& p) {
  DerivedConstants dc = derived_constants(p);
  dc.xi = longtime_exponent(p);
  dc.xi0 = (p.tau == 0.0) ? complex{1.0, 0.0} : delay_series(dc.a, p.tau, 0.0);
  return dc;
}

/// |xi0|^2 exp(-(Gamma - 2 Re xi) t); `dc` must come from solve_longtime().
inline double excitation_probability_longtime(const SystemParams& p, const DerivedConstants& dc,
                                              double t) {
  if (!dc.xi || !dc.xi0) throw NoLongtimeSolution("long-time constants not available");
  return std::norm(*dc.xi0) * std::exp(-(p.gamma - 2.0 * dc.xi->real()) * t);
}

inline double excitation_probability_longtime(const SystemParams& p, double t) {
  return excitation_probability_longtime(p, solve_longtime(p), t);
}

}  // namespace mirrorqed
