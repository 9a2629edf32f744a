#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace armour {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kMu0 = 4.0e-7 * kPi;  // H/m

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented invariant (bad geometry, bad config).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a numerical routine.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Singular system, non-convergence, overflow.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace armour
