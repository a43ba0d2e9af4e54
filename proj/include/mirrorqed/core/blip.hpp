#pragma once

#include <complex>

namespace mirrorqed {

enum class Direction : int { left = -1, right = +1 };

[[nodiscard]] constexpr int sign(Direction d) { return static_cast<int>(d); }

/// One single-excitation field component |1_s(x)> with its amplitude
/// (amplitude density per unit length when it comes from a wave packet).
struct BlipComponent {
  Direction direction = Direction::left;
  double position = 0.0;
  std::complex<double> amplitude{};
};

}  // namespace mirrorqed
