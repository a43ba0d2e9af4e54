#include <gtest/gtest.h>

#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <numbers>

#include "mirrorqed/analytic/excitation.hpp"
#include "mirrorqed/analytic/longtime.hpp"

using namespace mirrorqed;

namespace {

constexpr double kPi = std::numbers::pi;

// Principal-branch root of xi e^{xi tau} = a for real a, and the closed form
// of sum_k (-k a tau)^k / k! inside its radius of convergence.
double lambert_xi(double a, double tau) { return boost::math::lambert_w0(a * tau) / tau; }
double lambert_xi0(double xi, double tau) { return 1.0 / (1.0 + xi * tau); }

}  // namespace

TEST(Longtime, ShortRoundTripMatchesLambertW) {
  const auto p = SystemParams::from_phase(0.01, kPi, -1.0);
  const auto dc = solve_longtime(p);
  ASSERT_TRUE(dc.xi && dc.xi0);
  const double a = dc.a.real();
  const double xi = lambert_xi(a, 0.01);
  EXPECT_NEAR(dc.xi->real(), xi, 1e-12);
  EXPECT_NEAR(dc.xi->imag(), 0.0, 1e-14);
  EXPECT_NEAR(dc.xi0->real(), lambert_xi0(xi, 0.01), 1e-12);
  // Close to the Markovian values -1/2 and 1; the e^{tau/2} factor in a shifts both.
  EXPECT_NEAR(dc.xi->real(), -0.505, 1e-3);
  EXPECT_NEAR(dc.xi0->real(), 1.005, 1e-3);
}

TEST(Longtime, ComplexRootSatisfiesEquation) {
  const auto p = SystemParams::from_phase(0.3, 1.1, -0.7, 0.4);
  const auto dc = solve_longtime(p);
  ASSERT_TRUE(dc.xi);
  const complex r = *dc.xi * std::exp(*dc.xi * p.tau) - dc.a;
  EXPECT_LT(std::abs(r), 1e-12);
  EXPECT_LT(std::abs(*dc.xi0 - 1.0 / (1.0 + *dc.xi * p.tau)), 1e-12);
}

TEST(Longtime, TrappingExponentAndDivergentPrefactor) {
  const auto p = SystemParams::from_phase(1.0, 2.0 * kPi, -1.0);
  const complex xi = longtime_exponent(p);
  EXPECT_NEAR(xi.real(), 0.5, 1e-9);
  EXPECT_NEAR(xi.imag(), 0.0, 1e-9);
  EXPECT_THROW(solve_longtime(p), Xi0Diverges);
  EXPECT_THROW(excitation_probability_longtime(p, 1.0), Xi0Diverges);
}

TEST(Longtime, ZeroDelayLimit) {
  const auto p = SystemParams::from_phase(0.0, 0.0, -0.5);
  const auto dc = solve_longtime(p);
  EXPECT_EQ(*dc.xi, dc.a);
  EXPECT_EQ(*dc.xi0, complex(1.0));

  const auto q = SystemParams::from_phase(1e-8, kPi, -0.5);
  const auto dq = solve_longtime(q);
  EXPECT_LT(std::abs(*dq.xi - dq.a), 1e-7);
  EXPECT_LT(std::abs(*dq.xi0 - 1.0), 1e-7);
}

TEST(Longtime, TransparentMirrorIsFreeSpace) {
  const auto p = SystemParams::from_phase(1.0, kPi, 0.0);
  for (double t : {0.0, 1.0, 4.0, 10.0})
    EXPECT_NEAR(excitation_probability_longtime(p, t), std::exp(-t), 1e-15);
}

TEST(Longtime, ShortRoundTripDecaysNearTwiceFreeSpace) {
  const auto p = SystemParams::from_phase(0.01, kPi, -1.0);
  EXPECT_NEAR(excitation_probability_longtime(p, 1.0), std::exp(-2.0), 0.01 * std::exp(-2.0) + 1e-3);
}

TEST(Longtime, AgreesWithExactAfterTwentyRoundTrips) {
  for (double rm : {-1.0, -0.5, 0.5}) {
    const auto p = SystemParams::from_phase(0.05, kPi, rm);
    const auto dc = solve_longtime(p);
    for (double t = 1.0; t <= 10.0; t += 0.05) {
      const double exact = excitation_probability_exact(p, t);
      EXPECT_NEAR(excitation_probability_longtime(p, dc, t), exact, 0.01 * exact) << rm << " " << t;
    }
  }
}

TEST(Longtime, NoRealRootBelowBranchPoint) {
  // a exactly real with a tau < -1/e: the real-valued Newton sequence cannot converge.
  const auto p = SystemParams::from_phase(1.0, 0.0, 1.0);
  const auto dc = derived_constants(p);
  ASSERT_EQ(dc.a.imag(), 0.0);
  ASSERT_LT(dc.a.real() * p.tau, -std::exp(-1.0));
  EXPECT_THROW(solve_longtime(p), NoLongtimeSolution);
}

TEST(Longtime, MissingConstantsAreReported) {
  const auto p = SystemParams::from_phase(1.0, kPi, -0.5);
  EXPECT_THROW(excitation_probability_longtime(p, derived_constants(p), 1.0), NoLongtimeSolution);
}

TEST(DelaySeries, ZeroArgumentIsOne) {
  EXPECT_EQ(delay_series({0.0, 0.0}, 1.0, 0.0), complex(1.0));
}
