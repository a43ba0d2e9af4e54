#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "mirrorqed/core/params.hpp"
#include "mirrorqed/errors.hpp"

namespace mirrorqed {

/**
 * Discretized waveguide for the quantum-trajectory oracle.
 *
 * N boxes per direction; box 0 touches the emitter and box N-1 sits behind
 * the mirror, so the emitter-mirror distance is (N - 1) dt (c = 1).
 */
struct TrajectoryConfig {
  std::size_t boxes = 25;
  double dt = 0.0;
  double v_right = 0.5;
  double v_left = 0.5;
  double r_m = 0.0;
  double omega_e = 0.0;
  std::size_t n_trajectories = 1;
  double t_max = 10.0;
  std::uint64_t master_seed = 0;

  [[nodiscard]] double t_m() const { return std::sqrt(std::max(0.0, 1.0 - r_m * r_m)); }
  [[nodiscard]] double gamma() const { return v_right + v_left; }
  [[nodiscard]] std::size_t state_size() const { return 2 * boxes + 2; }
  /// Number of recorded samples (at 0, dt, 2 dt, ... <= t_max).
  [[nodiscard]] std::size_t step_count() const {
    return static_cast<std::size_t>(std::floor(t_max / dt * (1.0 + 1e-12))) + 1;
  }

  /// Symmetric coupling V_R = V_L = Gamma / 2 and dt = tau / (2 (N - 1)).
  static TrajectoryConfig from_params(const SystemParams& p, std::size_t boxes,
                                      std::size_t n_trajectories, double t_max,
                                      std::uint64_t master_seed) {
    if (std::abs(p.r_m.imag()) > 1e-12)
      throw ConfigError("trajectory oracle requires a real r_m (fold its phase into omega_e)");
    if (boxes < 2) throw ConfigError("trajectory needs at least 2 boxes per direction");
    TrajectoryConfig c;
    c.boxes = boxes;
    c.dt = p.tau / (2.0 * static_cast<double>(boxes - 1));
    c.v_right = 0.5 * p.gamma;
    c.v_left = 0.5 * p.gamma;
    c.r_m = p.r_m.real();
    c.omega_e = p.omega_e;
    c.n_trajectories = n_trajectories;
    c.t_max = t_max;
    c.master_seed = master_seed;
    return c;
  }
};

inline void validate(const TrajectoryConfig& c) {
  if (c.boxes < 2) throw ConfigError("trajectory needs at least 2 boxes per direction");
  if (!(c.dt > 0.0) || !std::isfinite(c.dt)) throw ConfigError("trajectory dt must be > 0 (tau > 0)");
  if (c.v_right < 0.0 || c.v_left < 0.0) throw ConfigError("coupling rates must be >= 0");
  if (!(std::abs(c.r_m) <= 1.0)) throw ConfigError("trajectory r_m must lie in [-1, 1]");
  if (!(c.omega_e >= 0.0)) throw ConfigError("omega_e must be >= 0");
  if (c.n_trajectories < 1) throw ConfigError("need at least one trajectory");
  if (!(c.t_max >= 0.0) || !std::isfinite(c.t_max)) throw ConfigError("t_max must be >= 0");
}

}  // namespace mirrorqed
