#pragma once

#include <cmath>
#include <complex>

namespace mirrorqed {

/// Kahan-Babuska (Neumaier) running sum; the complex case compensates the
/// real and imaginary parts independently.
class NeumaierSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      comp_ += (sum_ - t) + value;
    } else {
      comp_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexNeumaierSum {
 public:
  void add(std::complex<double> value) {
    re_.add(value.real());
    im_.add(value.imag());
  }
  [[nodiscard]] std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  NeumaierSum re_;
  NeumaierSum im_;
};

}  // namespace mirrorqed
