#pragma once

#include <cstdint>
#include <random>

namespace mirrorqed {

/**
 * Per-trajectory random stream.
 *
 * Stream rule: std::mt19937_64 seeded through std::seed_seq with the 32-bit
 * words (seed_lo, seed_hi, index_lo, index_hi). Both the engine and seed_seq
 * are fully specified by the standard, and doubles are built from the top
 * 53 bits directly, so the stream is identical across platforms.
 */
class TrajectoryRng {
 public:
  TrajectoryRng(std::uint64_t master_seed, std::uint64_t trajectory_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(trajectory_index),
                      static_cast<std::uint32_t>(trajectory_index >> 32)};
    engine_.seed(seq);
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(engine_() >> 11) + 0.5) * scale;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mirrorqed
