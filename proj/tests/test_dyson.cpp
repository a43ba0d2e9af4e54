#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mirrorqed/analytic/dyson.hpp"

using namespace mirrorqed;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(DysonClosed, ZerothOrderIsOne) {
  const auto p = SystemParams::from_phase(1.0, kPi, -1.0);
  for (double t : {0.0, 0.3, 1.0, 7.5}) EXPECT_EQ(dyson_coefficient_closed(p, 0, t), complex(1.0));
}

TEST(DysonClosed, SecondOrderByHand) {
  // w = r_m e^{i pi} = +1
  const auto p = SystemParams::from_phase(1.0, kPi, -1.0);
  const complex c2 = dyson_coefficient_closed(p, 2, 2.0);
  EXPECT_NEAR(c2.real(), -1.5, 1e-14);
  EXPECT_NEAR(c2.imag(), 0.0, 1e-14);
}

TEST(DysonClosed, FourthOrderBeforeFirstReturn) {
  const auto p = SystemParams::from_phase(2.0, kPi, -0.5);
  const double g4 = p.coupling_squared() * p.coupling_squared();
  for (double t : {0.2, 1.0, 1.9}) {
    const complex c4 = dyson_coefficient_closed(p, 4, t);
    EXPECT_NEAR(c4.real(), 0.5 * g4 * t * t, 1e-15);
    EXPECT_NEAR(c4.imag(), 0.0, 1e-15);
  }
}

TEST(DysonClosed, RejectsOddOrNegativeOrder) {
  const auto p = SystemParams::from_phase(1.0, kPi, -1.0);
  EXPECT_THROW(dyson_coefficient_closed(p, 3, 1.0), ConfigError);
  EXPECT_THROW(dyson_coefficient_closed(p, -2, 1.0), ConfigError);
  EXPECT_THROW(dyson_coefficient_iterative(p, 1), ConfigError);
}

TEST(DysonIterative, SecondOrderMatchesFormula) {
  const auto p = SystemParams::from_phase(1.0, 0.7, -0.5);
  const complex w = p.r_m * std::exp(complex(0.0, 0.7));
  const auto c2 = dyson_coefficient_iterative(p, 2);
  for (double t : {0.0, 0.5, 1.0, 1.4, 3.2}) {
    const double delayed = t >= 1.0 ? t - 1.0 : 0.0;
    const complex expected = -0.5 * (t + w * delayed);
    EXPECT_LT(std::abs(c2(t) - expected), 1e-14) << t;
  }
}

TEST(DysonIterative, SixthOrderCarriesBinomialWeights) {
  // Unit weight (w = 1) and t far past 3 tau: coefficients of (t - k tau)^3 are 1, 3, 3, 1.
  const auto p = SystemParams::from_phase(1.0, kPi, -1.0);
  const auto c6 = dyson_coefficient_iterative(p, 6);
  const double g6 = std::pow(p.coupling_squared(), 3);
  for (double t : {0.5, 1.5, 2.5, 3.5, 6.0}) {
    double sum = 0.0;
    const double weights[] = {1.0, 3.0, 3.0, 1.0};
    for (int k = 0; k < 4; ++k) {
      const double s = t - k;
      if (s >= 0.0) sum += weights[k] * s * s * s;
    }
    EXPECT_NEAR(c6(t).real(), -g6 / 6.0 * sum, 1e-13) << t;
    EXPECT_NEAR(c6(t).imag(), 0.0, 1e-13) << t;
  }
}

TEST(DysonIterative, MatchesClosedFormAtRandomPoints) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> tau_dist(0.05, 3.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> rm_dist(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const auto p =
        SystemParams::from_phase(tau_dist(gen), phase_dist(gen), rm_dist(gen), phase_dist(gen));
    const double t = 10.0 * unit(gen);
    for (int n = 0; n <= 12; n += 2) {
      const complex closed = dyson_coefficient_closed(p, n, t);
      const complex iter = dyson_coefficient_iterative(p, n)(t);
      const double scale = std::max(std::abs(closed), 1e-300);
      if (std::abs(closed) < 1e-200) {
        EXPECT_LT(std::abs(iter), 1e-200);
      } else {
        EXPECT_LT(std::abs(iter - closed) / scale, 1e-10) << "n=" << n << " t=" << t;
      }
    }
  }
}
