#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mirrorqed/core/blip.hpp"
#include "mirrorqed/errors.hpp"
#include "mirrorqed/trajectory/config.hpp"
#include "mirrorqed/trajectory/propagator.hpp"
#include "mirrorqed/trajectory/rng.hpp"

namespace mirrorqed {

/**
 * Single-excitation emitter + box state, 2N + 2 amplitudes ordered
 * [vacuum, excited, right 0 .. N-1, left N-1 .. 0].
 */
class TrajectoryState {
 public:
  using value_type = std::complex<double>;

  /// Emitter excited, field empty.
  explicit TrajectoryState(std::size_t boxes) : boxes_(boxes), amplitudes_(2 * boxes + 2) {
    amplitudes_[1] = 1.0;
  }

  [[nodiscard]] std::size_t boxes() const { return boxes_; }
  [[nodiscard]] std::span<value_type> amplitudes() { return amplitudes_; }
  [[nodiscard]] std::span<const value_type> amplitudes() const { return amplitudes_; }

  value_type& vacuum() { return amplitudes_[0]; }
  value_type& excited() { return amplitudes_[1]; }
  value_type& right(std::size_t n) { return amplitudes_[right_index(n)]; }
  value_type& left(std::size_t n) { return amplitudes_[left_index(n)]; }
  [[nodiscard]] value_type right(std::size_t n) const { return amplitudes_[right_index(n)]; }
  [[nodiscard]] value_type left(std::size_t n) const { return amplitudes_[left_index(n)]; }

  [[nodiscard]] std::size_t right_index(std::size_t n) const { return 2 + n; }
  [[nodiscard]] std::size_t left_index(std::size_t n) const { return 2 * boxes_ + 1 - n; }

  [[nodiscard]] double excited_probability() const { return std::norm(amplitudes_[1]); }

  [[nodiscard]] double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  void set_vacuum() {
    for (auto& a : amplitudes_) a = 0.0;
    amplitudes_[0] = 1.0;
  }

 private:
  std::size_t boxes_;
  std::vector<value_type> amplitudes_;
};

struct StepOutcome {
  double excited_probability = 0.0;  // recorded before the step
  bool detected = false;
  Direction channel = Direction::left;  // valid when detected
};

/// Moves every box one step away from (right) or towards (left) the emitter.
/// Right box N-2 feeds the transmitted box N-1 (times t_m) and the reflected
/// left box N-2 (times r_m); left box N-1 behind the mirror stays empty.
inline void shift_boxes(TrajectoryState& state, double t_m, double r_m) {
  const std::size_t n = state.boxes();
  const auto at_mirror = state.right(n - 2);
  for (std::size_t k = n - 2; k >= 1; --k) state.right(k) = state.right(k - 1);
  state.right(n - 1) = t_m * at_mirror;
  state.right(0) = 0.0;
  for (std::size_t k = 0; k + 2 < n; ++k) state.left(k) = state.left(k + 1);
  state.left(n - 2) = r_m * at_mirror;
  state.left(n - 1) = 0.0;
}

/**
 * One time step: record P_e, propagate the emitter-box-0 block, measure the
 * output boxes (right N-1, left 0), shift, renormalize.
 *
 * A detection removes the photon and leaves the vacuum basis state. Without a
 * detection both output amplitudes are zeroed.
 */
inline StepOutcome step(TrajectoryState& state, const TrajectoryConfig& config,
                        const Propagator& propagator, TrajectoryRng& rng) {
  StepOutcome out;
  out.excited_probability = state.excited_probability();

  propagator.apply(state.amplitudes());

  const std::size_t n = state.boxes();
  const double p_right = std::norm(state.right(n - 1));
  const double p_left = std::norm(state.left(0));
  const double p_total = p_right + p_left;
  const double eps1 = rng.uniform_open();
  if (eps1 <= p_total) {
    const double eps2 = p_total * rng.uniform_open();
    out.detected = true;
    out.channel = (eps2 <= p_left) ? Direction::left : Direction::right;
    state.set_vacuum();
  } else {
    state.right(n - 1) = 0.0;
    state.left(0) = 0.0;
  }

  shift_boxes(state, config.t_m(), config.r_m);

  const double norm2 = state.norm_squared();
  if (!(norm2 >= 1e-300)) throw NormUnderflow("trajectory state norm underflow");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : state.amplitudes()) a *= scale;
  return out;
}

/// Sample times k dt of a trajectory.
inline std::vector<double> trajectory_times(const TrajectoryConfig& config) {
  std::vector<double> t(config.step_count());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = static_cast<double>(k) * config.dt;
  return t;
}

/// P_e sampled at the start of every step; stream = (master_seed, index).
inline std::vector<double> run_trajectory(const TrajectoryConfig& config, const Propagator& u,
                                          std::uint64_t trajectory_index) {
  TrajectoryRng rng(config.master_seed, trajectory_index);
  TrajectoryState state(config.boxes);
  std::vector<double> pe(config.step_count());
  for (auto& sample : pe) sample = step(state, config, u, rng).excited_probability;
  return pe;
}

inline std::vector<double> run_trajectory(const TrajectoryConfig& config,
                                          std::uint64_t trajectory_index) {
  return run_trajectory(config, build_propagator(config), trajectory_index);
}

}  // namespace mirrorqed
