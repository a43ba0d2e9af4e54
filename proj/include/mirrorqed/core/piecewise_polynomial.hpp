#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "mirrorqed/errors.hpp"

namespace mirrorqed {

/**
 * Complex piecewise polynomial on the lattice 0, h, 2h, ... (h = spacing).
 *
 * Segment k covers [k h, (k + 1) h); the last segment extends to +infinity
 * and evaluation below zero uses segment 0. Each segment stores coefficients
 * in ascending powers of the local offset s = t - k h, so delaying a function
 * by whole lattice steps never re-expands anything. Breakpoints are always
 * computed as k * h, never accumulated.
 *
 * A zero spacing is only valid with a single segment.
 */
class PiecewisePolynomial {
 public:
  using Coefficients = std::vector<std::complex<double>>;

  PiecewisePolynomial() : segments_(1) {}

  PiecewisePolynomial(double spacing, std::vector<Coefficients> segments)
      : spacing_(spacing), segments_(std::move(segments)) {
    if (segments_.empty()) segments_.emplace_back();
    if (!(spacing_ >= 0.0) || !std::isfinite(spacing_))
      throw ConfigError("piecewise polynomial spacing must be finite and >= 0");
    if (spacing_ == 0.0 && segments_.size() > 1)
      throw ConfigError("zero spacing admits a single segment only");
  }

  static PiecewisePolynomial constant(std::complex<double> value, double spacing = 0.0) {
    return {spacing, {Coefficients{value}}};
  }

  [[nodiscard]] double spacing() const { return spacing_; }
  [[nodiscard]] std::size_t segment_count() const { return segments_.size(); }
  [[nodiscard]] const Coefficients& segment(std::size_t k) const { return segments_.at(k); }
  [[nodiscard]] const std::vector<Coefficients>& segments() const { return segments_; }

  [[nodiscard]] double breakpoint(std::size_t k) const {
    return static_cast<double>(k) * spacing_;
  }

  [[nodiscard]] std::vector<double> breakpoints() const {
    std::vector<double> out(segments_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = breakpoint(k);
    return out;
  }

  /// Index of the segment whose interval contains t.
  [[nodiscard]] std::size_t segment_index(double t) const {
    if (segments_.size() == 1 || t <= 0.0) return 0;
    const double last = static_cast<double>(segments_.size() - 1);
    double k = std::floor(t / spacing_);
    if (k >= last) return segments_.size() - 1;
    // floor(t / h) can be off by one ulp near a breakpoint; settle it against k * h.
    if ((k + 1.0) * spacing_ <= t) k += 1.0;
    if (k * spacing_ > t) k -= 1.0;
    return static_cast<std::size_t>(std::clamp(k, 0.0, last));
  }

  [[nodiscard]] std::complex<double> operator()(double t) const {
    const std::size_t k = segment_index(t);
    return evaluate(segments_[k], t - breakpoint(k));
  }

  /// Polynomial degree of the highest nonempty segment list.
  [[nodiscard]] std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& seg : segments_)
      if (!seg.empty()) d = std::max(d, seg.size() - 1);
    return d;
  }

  /// Same function with at least `count` segments: the unbounded last segment
  /// is re-expanded about each new breakpoint.
  [[nodiscard]] PiecewisePolynomial extended(std::size_t count) const {
    if (count <= segments_.size()) return *this;
    if (spacing_ == 0.0) throw ConfigError("cannot extend a zero-spacing piecewise polynomial");
    auto segs = segments_;
    const std::size_t base = segs.size() - 1;
    while (segs.size() < count) {
      const double offset = static_cast<double>(segs.size() - base) * spacing_;
      segs.push_back(recenter(segments_[base], offset));
    }
    return {spacing_, std::move(segs)};
  }

  static std::complex<double> evaluate(const Coefficients& c, double s) {
    std::complex<double> acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
  }

  /// Coefficients of q(s) = p(s + offset).
  static Coefficients recenter(const Coefficients& c, double offset) {
    Coefficients q = c;
    const std::size_t n = q.size();
    // Repeated synthetic division (Taylor shift).
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) q[j - 1] += offset * q[j];
    return q;
  }

  friend PiecewisePolynomial operator*(std::complex<double> s, const PiecewisePolynomial& p) {
    auto segs = p.segments_;
    for (auto& seg : segs)
      for (auto& c : seg) c *= s;
    return {p.spacing_, std::move(segs)};
  }

  friend PiecewisePolynomial operator+(const PiecewisePolynomial& lhs,
                                       const PiecewisePolynomial& rhs) {
    const double h = common_spacing(lhs, rhs);
    const std::size_t count = std::max(lhs.segment_count(), rhs.segment_count());
    const PiecewisePolynomial l = lhs.with_spacing(h).extended(count);
    const PiecewisePolynomial r = rhs.with_spacing(h).extended(count);
    std::vector<Coefficients> segs(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto& a = l.segments_[k];
      const auto& b = r.segments_[k];
      segs[k].assign(std::max(a.size(), b.size()), {});
      for (std::size_t j = 0; j < a.size(); ++j) segs[k][j] += a[j];
      for (std::size_t j = 0; j < b.size(); ++j) segs[k][j] += b[j];
    }
    return {h, std::move(segs)};
  }

 private:
  // A single-segment polynomial has no lattice yet and adopts any spacing.
  [[nodiscard]] PiecewisePolynomial with_spacing(double h) const {
    if (h == spacing_) return *this;
    return {h, segments_};
  }

  static double common_spacing(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    if (a.segment_count() == 1 && a.spacing_ == 0.0) return b.spacing_;
    if (b.segment_count() == 1 && b.spacing_ == 0.0) return a.spacing_;
    if (a.segment_count() == 1) return b.spacing_;
    if (b.segment_count() == 1) return a.spacing_;
    if (a.spacing_ != b.spacing_) throw ConfigError("piecewise polynomials on different lattices");
    return a.spacing_;
  }

  double spacing_ = 0.0;
  std::vector<Coefficients> segments_;
};

/**
 * Antiderivative on the same lattice.
 *
 * With `from_zero` the result is F(t) = integral of p over [0, t], continuous
 * across breakpoints. Without it each segment is integrated from its own left
 * breakpoint (no constants carried over).
 */
inline PiecewisePolynomial pp_integrate(const PiecewisePolynomial& p, bool from_zero = true) {
  std::vector<PiecewisePolynomial::Coefficients> segs(p.segment_count());
  std::complex<double> carry{};
  for (std::size_t k = 0; k < p.segment_count(); ++k) {
    const auto& c = p.segment(k);
    auto& out = segs[k];
    out.assign(c.size() + 1, {});
    out[0] = from_zero ? carry : std::complex<double>{};
    for (std::size_t j = 0; j < c.size(); ++j) out[j + 1] = c[j] / static_cast<double>(j + 1);
    if (from_zero && k + 1 < p.segment_count())
      carry = PiecewisePolynomial::evaluate(out, p.spacing());
  }
  return {p.spacing(), std::move(segs)};
}

/**
 * q(t) = p(t - delay) for t >= delay, zero before.
 *
 * The delay must be a whole number of lattice steps (any delay is accepted
 * for a single-segment input, which then adopts it as its lattice spacing).
 */
inline PiecewisePolynomial pp_shift(const PiecewisePolynomial& p, double delay) {
  if (!(delay >= 0.0) || !std::isfinite(delay)) throw ConfigError("shift delay must be >= 0");
  if (delay == 0.0) return p;
  double h = p.spacing();
  std::size_t steps = 1;
  if (p.segment_count() == 1) {
    h = delay;
  } else {
    const double ratio = delay / h;
    const double whole = std::round(ratio);
    if (whole < 1.0 || std::abs(ratio - whole) > 1e-12 * std::max(1.0, ratio))
      throw ConfigError("shift delay must be a whole multiple of the lattice spacing");
    steps = static_cast<std::size_t>(whole);
  }
  std::vector<PiecewisePolynomial::Coefficients> segs(steps);
  for (const auto& seg : p.segments()) segs.push_back(seg);
  return {h, std::move(segs)};
}

}  // namespace mirrorqed
