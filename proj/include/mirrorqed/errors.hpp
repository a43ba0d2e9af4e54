#pragma once

#include <stdexcept>
#include <string>

namespace mirrorqed {

/// Parameters or grids violate a documented precondition.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Newton iteration for xi * exp(xi * tau) = a did not converge.
class NoLongtimeSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The xi0 series grows instead of converging (round trip too long).
class Xi0Diverges : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position/time outside the support of a field amplitude.
class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The emitter still holds population at the end of the spectrum window.
class NotDecayed : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Trajectory state collapsed to (numerically) zero norm.
class NormUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mirrorqed
