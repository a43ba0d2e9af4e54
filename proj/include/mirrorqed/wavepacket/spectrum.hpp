#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mirrorqed/analytic/excitation.hpp"
#include "mirrorqed/wavepacket/spatial.hpp"

namespace mirrorqed {

/**
 * Spectrum of the left-moving wave packet after the emitter has decayed.
 *
 * `samples` holds Phi_L on x_j = -c t_final + j delta (so u = x/c + t_final
 * = j delta), `amplitudes` their unitary DFT with kernel exp(+i omega u).
 * Frequencies are absolute (units of Gamma), ascending, centred on zero.
 */
struct Spectrum {
  std::vector<double> frequencies;
  std::vector<double> spectral_density;  // |amplitude|^2 scaled to unit peak
  std::vector<complex> amplitudes;
  std::vector<complex> samples;
  double sample_spacing = 0.0;
  double t_final = 0.0;
  double omega_e = 0.0;
  double peak_power = 0.0;  // unscaled |amplitude|^2 at the peak
};

inline constexpr double kDefaultSpectrumTime = 40.0;
inline constexpr std::size_t kDefaultSpectrumSamples = std::size_t{1} << 14;
inline constexpr double kDecayedThreshold = 1e-6;

namespace detail {

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using FftwPlan = std::unique_ptr<fftw_plan_s, FftwPlanDeleter>;

/// In-place DFT, out[j] = sum_n in[n] exp(+2 pi i j n / N) / sqrt(N).
inline void unitary_dft_positive(std::vector<complex>& data) {
  auto* buffer = reinterpret_cast<fftw_complex*>(data.data());
  FftwPlan plan(fftw_plan_dft_1d(static_cast<int>(data.size()), buffer, buffer, FFTW_BACKWARD,
                                 FFTW_ESTIMATE));
  fftw_execute(plan.get());
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& v : data) v *= scale;
}

}  // namespace detail

/// Not thread-safe: FFTW planning touches global state.
inline Spectrum spectrum(const SystemParams& p, double t_final = kDefaultSpectrumTime,
                         std::size_t sample_count = kDefaultSpectrumSamples) {
  if (sample_count < 2 || (sample_count & (sample_count - 1)) != 0)
    throw ConfigError("spectrum sample count must be a power of two >= 2");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be > 0");
  const DerivedConstants dc = derived_constants(p);
  const double remaining = excitation_probability_exact(p, dc, t_final);
  if (remaining > kDecayedThreshold)
    throw NotDecayed("emitter excitation " + std::to_string(remaining) + " at t_final exceeds " +
                     std::to_string(kDecayedThreshold));

  Spectrum s;
  s.t_final = t_final;
  s.omega_e = p.omega_e;
  s.sample_spacing = t_final / static_cast<double>(sample_count);
  s.samples.resize(sample_count);
  for (std::size_t j = 0; j < sample_count; ++j) {
    const double x = -t_final + static_cast<double>(j) * s.sample_spacing;
    s.samples[j] = left_amplitude(p, dc, x, t_final).amplitude;
  }

  std::vector<complex> transformed = s.samples;
  detail::unitary_dft_positive(transformed);

  // fftshift: bin j >= N/2 is the negative frequency j - N.
  const std::size_t half = sample_count / 2;
  const double d_omega =
      2.0 * std::numbers::pi / (static_cast<double>(sample_count) * s.sample_spacing);
  s.frequencies.resize(sample_count);
  s.amplitudes.resize(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const std::size_t bin = (i + half) % sample_count;
    const double index = static_cast<double>(i) - static_cast<double>(half);
    s.frequencies[i] = index * d_omega;
    s.amplitudes[i] = transformed[bin];
  }
  s.spectral_density.resize(sample_count);
  for (std::size_t i = 0; i < sample_count; ++i) s.spectral_density[i] = std::norm(s.amplitudes[i]);
  s.peak_power = *std::max_element(s.spectral_density.begin(), s.spectral_density.end());
  if (s.peak_power > 0.0)
    for (auto& v : s.spectral_density) v /= s.peak_power;
  return s;
}

/// Width of the peak containing the maximum at half its height, with linear
/// interpolation between samples. Returns NaN if a crossing is missing.
inline double full_width_half_max(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 3) return std::nan("");
  const auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
  const double level = 0.5 * y[peak];
  std::size_t lo = peak;
  while (lo > 0 && y[lo - 1] > level) --lo;
  std::size_t hi = peak;
  while (hi + 1 < y.size() && y[hi + 1] > level) ++hi;
  if (lo == 0 || hi + 1 == y.size()) return std::nan("");
  auto cross = [&](std::size_t below, std::size_t above) {
    return x[below] + (level - y[below]) * (x[above] - x[below]) / (y[above] - y[below]);
  };
  return cross(hi + 1, hi) - cross(lo - 1, lo);
}

}  // namespace mirrorqed
