#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "mirrorqed/errors.hpp"

namespace mirrorqed {

using complex = std::complex<double>;

inline constexpr complex kI{0.0, 1.0};

/**
 * Emitter + mirror configuration.
 *
 * All quantities are in units normalized to the free-space decay rate with
 * c = 1: frequencies in Gamma, times in 1/Gamma, lengths in c/Gamma. The
 * emitter sits at x = 0 and the mirror at x = tau / 2 (half the round trip).
 * `gamma` is kept as a field so dimensionful inputs can be fed through the
 * same code path; the CLI always uses gamma = 1.
 */
struct SystemParams {
  double omega_e = 0.0;
  double gamma = 1.0;
  double tau = 0.0;
  complex r_m{0.0, 0.0};
  double t_m = 1.0;

  /// Squared coupling |g|^2 = Gamma c / 2.
  [[nodiscard]] double coupling_squared() const { return 0.5 * gamma; }
  [[nodiscard]] double coupling() const { return std::sqrt(coupling_squared()); }

  /// Round-trip phase omega_e * tau.
  [[nodiscard]] double round_trip_phase() const { return omega_e * tau; }

  /// Builds a configuration from (tau, omega_e * tau, |r_m| or signed real r_m,
  /// extra reflection phase). t_m follows from unitarity.
  static SystemParams from_phase(double tau, double phase, double rm, double rm_phase = 0.0,
                                 double gamma = 1.0) {
    SystemParams p;
    p.gamma = gamma;
    p.tau = tau;
    if (tau > 0.0) {
      p.omega_e = phase / tau;
    } else if (phase != 0.0) {
      throw ConfigError("round-trip phase requires tau > 0; pass omega_e directly");
    }
    p.r_m = std::polar(1.0, rm_phase) * rm;
    p.t_m = std::sqrt(std::max(0.0, 1.0 - std::norm(p.r_m)));
    return p;
  }

  static SystemParams from_frequency(double tau, double omega_e, double rm, double rm_phase = 0.0,
                                     double gamma = 1.0) {
    SystemParams p = from_phase(tau, 0.0, rm, rm_phase, gamma);
    p.omega_e = omega_e;
    return p;
  }
};

/// Throws ConfigError naming the first violated invariant.
inline void validate(const SystemParams& p) {
  constexpr double tol = 1e-12;
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) throw ConfigError("gamma must be > 0");
  if (!(p.tau >= 0.0) || !std::isfinite(p.tau)) throw ConfigError("tau must be >= 0");
  if (!(p.omega_e >= 0.0) || !std::isfinite(p.omega_e)) throw ConfigError("omega_e must be >= 0");
  if (std::abs(p.r_m) > 1.0 + tol) throw ConfigError("|r_m| must be <= 1");
  if (p.t_m < 0.0) throw ConfigError("t_m must be >= 0");
  if (std::abs(p.t_m * p.t_m + std::norm(p.r_m) - 1.0) > 1e-10)
    throw ConfigError("mirror must be unitary: t_m^2 + |r_m|^2 = 1");
}

struct MirrorCoefficients {
  double t_m;
  complex r_m;
};

/// Transmission/reflection of the local mirror Hamiltonian with coupling J.
inline MirrorCoefficients mirror_coefficients(double j_over_c) {
  if (!(j_over_c >= 0.0)) throw ConfigError("J/c must be >= 0");
  const double q = 0.5 * j_over_c;
  const double denom = 1.0 + q * q;
  return {(1.0 - q * q) / denom, complex{0.0, -j_over_c / denom}};
}

/**
 * Complex constants of the exact solution.
 *
 * `a` multiplies each round trip in the even-sector sum, `omega_complex` is
 * the complex emitter frequency. `xi` and `xi0` are filled by
 * solve_longtime() only.
 */
struct DerivedConstants {
  complex a;
  complex omega_complex;
  std::optional<complex> xi;
  std::optional<complex> xi0;
};

/// a = -r_m exp(i Omega tau) Gamma / 2 with Omega = omega_e - i Gamma / 2.
inline DerivedConstants derived_constants(const SystemParams& p) {
  const complex omega{p.omega_e, -0.5 * p.gamma};
  const complex a = -p.r_m * std::exp(kI * omega * p.tau) * (0.5 * p.gamma);
  return {a, omega, std::nullopt, std::nullopt};
}

}  // namespace mirrorqed
