#pragma once

// Modified Bessel functions of integer order and complex argument, plus the
// Riemann zeta function at integer arguments.
//
// All functions are pure and thread-safe. Errors are reported by throwing
// armour::DomainError (argument outside the supported domain) or
// armour::NumericalError (overflow of an otherwise valid evaluation).

#include <vector>

#include "armour/common.hpp"

namespace armour::specialfn {

inline constexpr int kMaxOrder = 64;
inline constexpr double kMaxArgument = 700.0;

/// I_order(z). Requires 0 <= order <= kMaxOrder and |z| < kMaxArgument.
cplx bessel_i(int order, cplx z);

/// K_order(z). Requires Re(z) > 0 and |z| < kMaxArgument.
cplx bessel_k(int order, cplx z);

/// dI_order/dz via (I_{m-1} + I_{m+1}) / 2.
cplx bessel_i_prime(int order, cplx z);

/// dK_order/dz via -(K_{m-1} + K_{m+1}) / 2.
cplx bessel_k_prime(int order, cplx z);

/// K_0(z) ... K_max_order(z) by upward recurrence; one call is cheaper than
/// max_order separate bessel_k calls.
std::vector<cplx> bessel_k_sequence(int max_order, cplx z);

/// I_{order+1}(z) / I_order(z) by backward recurrence of the ratio. Finite
/// where I_order itself underflows; 0 at z = 0.
cplx bessel_i_ratio(int order, cplx z);

/// zeta(s) for integer s >= 2.
double riemann_zeta(int s);

}  // namespace armour::specialfn
