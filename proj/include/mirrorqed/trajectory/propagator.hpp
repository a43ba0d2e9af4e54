#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>

#include "mirrorqed/trajectory/config.hpp"

namespace mirrorqed {

/**
 * exp(-i (H_S + H_I) dt) restricted to span{|e,0>, |g,1_R0>, |g,1_L0>}.
 *
 * H_S + H_I has diagonal (omega_e, 0, 0) and real couplings sqrt(V / dt)
 * between the excited state and box 0 of each direction; everything outside
 * this block is left untouched.
 */
struct Propagator {
  Eigen::Matrix3cd block = Eigen::Matrix3cd::Identity();
  std::size_t right0 = 2;  // state index of right box 0
  std::size_t left0 = 3;   // state index of left box 0

  void apply(std::span<std::complex<double>> state) const {
    const Eigen::Vector3cd v{state[1], state[right0], state[left0]};
    const Eigen::Vector3cd w = block * v;
    state[1] = w[0];
    state[right0] = w[1];
    state[left0] = w[2];
  }
};

inline Propagator build_propagator(const TrajectoryConfig& config) {
  validate(config);
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = config.omega_e;
  h(0, 1) = h(1, 0) = std::sqrt(config.v_right / config.dt);
  h(0, 2) = h(2, 0) = std::sqrt(config.v_left / config.dt);

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(h);
  const Eigen::Matrix3cd vectors = eig.eigenvectors().cast<std::complex<double>>();
  Eigen::Vector3cd phases;
  for (int i = 0; i < 3; ++i)
    phases[i] = std::polar(1.0, -eig.eigenvalues()[i] * config.dt);

  Propagator u;
  u.block = vectors * phases.asDiagonal() * vectors.adjoint();
  u.right0 = 2;
  u.left0 = 2 * config.boxes + 1;
  return u;
}

}  // namespace mirrorqed
