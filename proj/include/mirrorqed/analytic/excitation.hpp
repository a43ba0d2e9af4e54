#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "mirrorqed/analytic/series.hpp"
#include "mirrorqed/core/params.hpp"

namespace mirrorqed {

/// Exact excited-state amplitude <e,0|psi(t)> for the initial state |e,0>.
///
/// For tau > 0 this is exp(-i Omega t) sum_{k <= t/tau} a^k/k! (t - k tau)^k.
/// For tau = 0 the lattice collapses and the Markovian limit
/// exp(-i Omega t + a t) (with a evaluated at tau = 0) is returned.
inline complex excitation_amplitude_exact(const SystemParams& p, const DerivedConstants& dc,
                                          double t) {
  if (!(t >= 0.0)) throw OutOfDomain("excitation amplitude requires t >= 0");
  if (p.tau == 0.0) return std::exp(-kI * dc.omega_complex * t + dc.a * t);
  return std::exp(-kI * dc.omega_complex * t) * detail::round_trip_sum(dc.a, p.tau, t);
}

inline complex excitation_amplitude_exact(const SystemParams& p, double t) {
  return excitation_amplitude_exact(p, derived_constants(p), t);
}

inline double excitation_probability_exact(const SystemParams& p, const DerivedConstants& dc,
                                           double t) {
  return std::norm(excitation_amplitude_exact(p, dc, t));
}

inline double excitation_probability_exact(const SystemParams& p, double t) {
  return excitation_probability_exact(p, derived_constants(p), t);
}

/// P_e and the even-sector amplitude on a time grid.
struct ExcitationCurve {
  std::vector<double> times;
  std::vector<double> probabilities;
  std::vector<complex> amplitudes;
};

inline ExcitationCurve excitation_curve(const SystemParams& p, std::span<const double> times) {
  const DerivedConstants dc = derived_constants(p);
  ExcitationCurve curve;
  curve.times.assign(times.begin(), times.end());
  curve.amplitudes.reserve(times.size());
  curve.probabilities.reserve(times.size());
  for (double t : times) {
    const complex amp = excitation_amplitude_exact(p, dc, t);
    curve.amplitudes.push_back(amp);
    curve.probabilities.push_back(std::norm(amp));
  }
  return curve;
}

/// Markovian decay exp(-Gamma t [1 + r_m cos(omega_e tau)]).
///
/// A complex r_m enters through Re(r_m exp(i omega_e tau)), i.e. its phase is
/// folded into the round-trip phase.
inline double excitation_probability_markovian(const SystemParams& p, double t) {
  if (!(t >= 0.0)) throw OutOfDomain("Markovian probability requires t >= 0");
  const double interference = std::real(p.r_m * std::exp(kI * p.round_trip_phase()));
  return std::exp(-p.gamma * t * (1.0 + interference));
}

/// Mirror-dressed frequency shift and decay rate in the Markovian limit.
struct DressedParams {
  double delta_eff;
  double gamma_eff;
};

inline DressedParams dressed_params(const SystemParams& p) {
  const complex w = p.r_m * std::exp(kI * p.round_trip_phase());
  return {0.5 * p.gamma * w.imag(), p.gamma * (1.0 + w.real())};
}

}  // namespace mirrorqed
