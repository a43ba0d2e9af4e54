#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mirrorqed/analytic/excitation.hpp"
#include "mirrorqed/analytic/series.hpp"
#include "mirrorqed/core/blip.hpp"
#include "mirrorqed/core/params.hpp"

namespace mirrorqed {

/// Left-moving photon amplitude at x < 0 together with its interval index n
/// (the number of completed round trips at the emission time t + x / c).
struct LeftAmplitude {
  complex amplitude;  // Phi_L(x, t)
  complex envelope;   // phi_L(x, t)
  std::size_t interval = 0;
};

namespace detail {

/// exp(-i Omega s) f(s) for s >= 0, zero before emission starts.
inline complex emission_amplitude(const SystemParams& p, const DerivedConstants& dc, double s) {
  if (s < 0.0) return {};
  return excitation_amplitude_exact(p, dc, s);
}

}  // namespace detail

/**
 * Phi_L(x, t) = -(i g / c) exp(-i Omega (x/c + t)) phi_L(x, t) for -ct <= x < 0.
 *
 * With u = x/c + t the emission time of the direct component,
 *   phi_L = f(u) + r_m exp(i Omega tau) f(u - tau),
 * where f is the round-trip sum (zero for negative argument). On the first
 * interval u < tau this is 1.
 */
inline LeftAmplitude left_amplitude(const SystemParams& p, const DerivedConstants& dc, double x,
                                    double t) {
  if (!(t > 0.0)) throw OutOfDomain("left amplitude requires t > 0");
  if (!(x < 0.0)) throw OutOfDomain("left amplitude requires x < 0");
  if (x < -t) throw OutOfDomain("left amplitude requires x >= -ct");
  const double u = x + t;
  const complex g{p.coupling(), 0.0};

  LeftAmplitude out;
  if (p.tau == 0.0) {
    out.interval = 0;
    out.envelope = (1.0 + p.r_m) * std::exp(dc.a * u);
  } else {
    out.interval = detail::round_trips_completed(u, p.tau);
    const complex reflected = p.r_m * std::exp(kI * dc.omega_complex * p.tau);
    out.envelope = detail::round_trip_sum(dc.a, p.tau, u) +
                   reflected * detail::round_trip_sum(dc.a, p.tau, u - p.tau);
  }
  out.amplitude = -kI * g * std::exp(-kI * dc.omega_complex * u) * out.envelope;
  return out;
}

inline LeftAmplitude left_amplitude(const SystemParams& p, double x, double t) {
  return left_amplitude(p, derived_constants(p), x, t);
}

/**
 * Single-photon field components at position x and time t (amplitude
 * densities per unit length). A component emitted at time t1 carries
 * -i g A(t1), A being the excited-state amplitude.
 *
 *   x < 0         left:  direct (t1 = t + x) plus reflected (t1 = t + x - tau)
 *   0 <= x < d/2  right: direct (t1 = t - x); left: reflected (t1 = t - tau + x)
 *   x >= d/2      right: transmitted, t_m times direct (t1 = t - x)
 *
 * The mirror sits at d/2 = tau/2; nothing moves left beyond it.
 */
inline std::vector<BlipComponent> field_components(const SystemParams& p,
                                                   const DerivedConstants& dc, double x,
                                                   double t) {
  if (!(t > 0.0)) throw OutOfDomain("field components require t > 0");
  const complex emit = -kI * p.coupling();
  const double half = 0.5 * p.tau;
  std::vector<BlipComponent> out;
  if (x < 0.0) {
    complex left{};
    if (x >= -t) left = left_amplitude(p, dc, x, t).amplitude;
    out.push_back({Direction::left, x, left});
  } else if (x < half) {
    out.push_back({Direction::right, x, emit * detail::emission_amplitude(p, dc, t - x)});
    out.push_back(
        {Direction::left, x, emit * p.r_m * detail::emission_amplitude(p, dc, t - p.tau + x)});
  } else {
    out.push_back({Direction::right, x, emit * p.t_m * detail::emission_amplitude(p, dc, t - x)});
  }
  return out;
}

/// |amplitude|^2 of the component moving in `direction` at (x, t); zero
/// outside the light cone.
inline double photon_density(const SystemParams& p, const DerivedConstants& dc, double x,
                             Direction direction, double t) {
  double density = 0.0;
  for (const auto& c : field_components(p, dc, x, t))
    if (c.direction == direction) density += std::norm(c.amplitude);
  return density;
}

inline double photon_density(const SystemParams& p, double x, Direction direction, double t) {
  return photon_density(p, derived_constants(p), x, direction, t);
}

/// Unscaled density and amplitude of one direction on a position grid.
struct SpatialProfile {
  std::vector<double> positions;
  std::vector<double> density;
  std::vector<complex> amplitudes;
  Direction direction = Direction::left;
  std::vector<std::size_t> interval;  // round-trip interval for x < 0, else 0
  double time = 0.0;
};

inline SpatialProfile spatial_profile(const SystemParams& p, std::span<const double> positions,
                                      Direction direction, double t) {
  const DerivedConstants dc = derived_constants(p);
  SpatialProfile prof;
  prof.direction = direction;
  prof.time = t;
  prof.positions.assign(positions.begin(), positions.end());
  for (double x : positions) {
    complex amp{};
    std::size_t n = 0;
    for (const auto& c : field_components(p, dc, x, t))
      if (c.direction == direction) amp += c.amplitude;
    if (x < 0.0 && x >= -t) n = left_amplitude(p, dc, x, t).interval;
    prof.amplitudes.push_back(amp);
    prof.density.push_back(std::norm(amp));
    prof.interval.push_back(n);
  }
  return prof;
}

}  // namespace mirrorqed
