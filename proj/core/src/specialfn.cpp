#include "armour/specialfn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace armour::specialfn {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr int kMaxIterations = 200000;

// Below this modulus (or while the series is dominated by its first term)
// the ascending series is used for I_m.
constexpr double kSeriesRadius = 5.0;
// K_0/K_1 switch from the logarithmic series to Temme's continued fraction.
constexpr double kKSeriesRadius = 2.0;

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_argument(cplx z) {
  if (!is_finite(z)) {
    throw DomainError("bessel: non-finite argument");
  }
  if (std::abs(z) >= kMaxArgument) {
    throw DomainError(fmt::format("bessel: |z| = {} exceeds overflow guard {}", std::abs(z),
                                  kMaxArgument));
  }
}

void check_order(int order) {
  if (order < 0) {
    throw DomainError(fmt::format("bessel: negative order {} (use I_-m = I_m)", order));
  }
  if (order > kMaxOrder) {
    throw DomainError(fmt::format("bessel: order {} exceeds {}", order, kMaxOrder));
  }
}

cplx i_series(int m, cplx z) {
  const cplx half = 0.5 * z;
  cplx term = 1.0;
  for (int k = 1; k <= m; ++k) {
    term *= half / static_cast<double>(k);
  }
  const cplx q = half * half;
  cplx sum = term;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + m));
    sum += term;
    if (std::abs(term) <= 0.25 * kEps * std::abs(sum)) {
      break;
    }
  }
  return sum;
}

// Miller's backward recurrence, normalized with e^z = I_0 + 2 sum_{k>=1} I_k.
// Requires Re(z) >= 0 so that e^z does not lose the normalization to
// cancellation.
cplx i_miller(int m, cplx z) {
  const double az = std::abs(z);
  const double start_a = m + std::sqrt(80.0 * az);
  const double start_b = az + 12.0 * std::cbrt(az);
  const int start = static_cast<int>(std::max(start_a, start_b)) + 40;

  constexpr double kRescale = 1e-250;
  cplx next = 0.0;  // y_{k+1}
  cplx cur = 1e-30;  // y_k
  cplx sum = 0.0;
  cplx y_m = 0.0;
  for (int k = start; k >= 1; --k) {
    if (k == m) {
      y_m = cur;
    }
    sum += 2.0 * cur;
    const cplx prev = (2.0 * k / z) * cur + next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > 1e250) {
      cur *= kRescale;
      next *= kRescale;
      sum *= kRescale;
      y_m *= kRescale;
    }
  }
  sum += cur;
  if (m == 0) {
    y_m = cur;
  }
  return y_m / sum * std::exp(z);
}

cplx i_unchecked(int m, cplx z) {
  if (z == cplx{0.0, 0.0}) {
    return m == 0 ? 1.0 : 0.0;
  }
  if (z.real() < 0.0) {
    const cplx v = i_unchecked(m, -z);
    return (m % 2 == 0) ? v : -v;
  }
  const double az = std::abs(z);
  if (az <= kSeriesRadius || 0.25 * az * az <= static_cast<double>(m + 1)) {
    return i_series(m, z);
  }
  return i_miller(m, z);
}

// Ascending series for K_0 and K_1 (small |z|).
void k01_series(cplx z, cplx& k0, cplx& k1) {
  const cplx log_half = std::log(0.5 * z);
  const cplx q = 0.25 * z * z;

  // K_0 = -(ln(z/2) + gamma) I_0 + sum_{k>=1} H_k q^k / (k!)^2
  cplx term = 1.0;  // q^k / (k!)^2
  cplx i0 = 1.0;
  cplx tail0 = 0.0;
  double harmonic = 0.0;
  for (int k = 1; k < kMaxIterations; ++k) {
    term *= q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    i0 += term;
    tail0 += harmonic * term;
    if (std::abs(term) * std::max(1.0, harmonic) <= 0.25 * kEps * std::abs(i0)) {
      break;
    }
  }
  k0 = -(log_half + kEulerGamma) * i0 + tail0;

  // K_1 = 1/z + ln(z/2) I_1 - (z/4) sum_{k>=0} [psi(k+1) + psi(k+2)] q^k / (k!(k+1)!)
  cplx t = 1.0;  // q^k / (k! (k+1)!)
  cplx i1_over_half = 1.0;
  double h_k = 0.0;
  cplx tail1 = (-2.0 * kEulerGamma + 1.0) * t;
  for (int k = 1; k < kMaxIterations; ++k) {
    t *= q / (static_cast<double>(k) * (k + 1));
    h_k += 1.0 / k;
    const double psi_sum = -2.0 * kEulerGamma + h_k + (h_k + 1.0 / (k + 1));
    i1_over_half += t;
    tail1 += psi_sum * t;
    if (std::abs(t) * std::max(1.0, std::abs(psi_sum)) <= 0.25 * kEps * std::abs(i1_over_half)) {
      break;
    }
  }
  const cplx i1 = 0.5 * z * i1_over_half;
  k1 = 1.0 / z + log_half * i1 - 0.25 * z * tail1;
}

// Temme's continued fraction (Steed's algorithm) for K_0 and K_1, Re(z) > 0.
void k01_continued_fraction(cplx x, cplx& k0, cplx& k1) {
  constexpr double a1 = 0.25;
  cplx b = 2.0 * (1.0 + x);
  cplx d = 1.0 / b;
  cplx h = d;
  cplx delh = d;
  cplx q1 = 0.0;
  cplx q2 = 1.0;
  cplx q = a1;
  double c = a1;
  double a = -a1;
  cplx s = 1.0 + q * delh;
  int i = 1;
  for (; i < kMaxIterations; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const cplx qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const cplx dels = q * delh;
    s += dels;
    if (std::abs(dels) < kEps * std::abs(s)) {
      break;
    }
  }
  if (i == kMaxIterations) {
    throw NumericalError("bessel_k: continued fraction failed to converge");
  }
  h = a1 * h;
  k0 = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

void check_k_argument(cplx z) {
  check_argument(z);
  if (z == cplx{0.0, 0.0}) {
    throw DomainError("bessel_k: K_m is singular at z = 0");
  }
  if (!(z.real() > 0.0)) {
    throw DomainError("bessel_k: requires Re(z) > 0");
  }
}

std::vector<cplx> k_sequence_unchecked(int max_order, cplx z) {
  std::vector<cplx> out(static_cast<std::size_t>(max_order) + 1);
  cplx k0;
  cplx k1;
  if (std::abs(z) <= kKSeriesRadius) {
    k01_series(z, k0, k1);
  } else {
    k01_continued_fraction(z, k0, k1);
  }
  out[0] = k0;
  if (max_order >= 1) {
    out[1] = k1;
  }
  for (int n = 1; n < max_order; ++n) {
    out[n + 1] = out[n - 1] + (2.0 * n / z) * out[n];
  }
  for (const cplx& v : out) {
    if (!is_finite(v)) {
      throw NumericalError(fmt::format("bessel_k: overflow for order <= {} at |z| = {}", max_order,
                                       std::abs(z)));
    }
  }
  return out;
}

}  // namespace

cplx bessel_i(int order, cplx z) {
  check_order(order);
  check_argument(z);
  return i_unchecked(order, z);
}

cplx bessel_k(int order, cplx z) {
  check_order(order);
  check_k_argument(z);
  return k_sequence_unchecked(order, z).back();
}

std::vector<cplx> bessel_k_sequence(int max_order, cplx z) {
  check_order(max_order);
  check_k_argument(z);
  return k_sequence_unchecked(max_order, z);
}

cplx bessel_i_prime(int order, cplx z) {
  check_order(order);
  check_argument(z);
  if (order == 0) {
    return i_unchecked(1, z);
  }
  return 0.5 * (i_unchecked(order - 1, z) + i_unchecked(order + 1, z));
}

cplx bessel_k_prime(int order, cplx z) {
  check_order(order);
  check_k_argument(z);
  const auto k = k_sequence_unchecked(order + 1, z);
  if (order == 0) {
    return -k[1];
  }
  return -0.5 * (k[order - 1] + k[order + 1]);
}

cplx bessel_i_ratio(int order, cplx z) {
  check_order(order);
  check_argument(z);
  if (z == cplx{0.0, 0.0}) {
    return 0.0;
  }
  // r_{k-1} = 1 / (2k/z + r_k), started far above order where r_k ~ z / 2k.
  const int start = order + 2 * static_cast<int>(std::abs(z)) + 60;
  cplx r = 0.0;
  for (int k = start; k > order; --k) {
    r = 1.0 / (2.0 * k / z + r);
  }
  return r;
}

double riemann_zeta(int s) {
  if (s < 2) {
    throw DomainError(fmt::format("riemann_zeta: s = {} < 2", s));
  }
  // Euler-Maclaurin: direct sum to N-1, integral tail, Bernoulli corrections.
  constexpr int kN = 10;
  constexpr std::array<double, 7> kBernoulli = {1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0, -1.0 / 30.0,
                                                5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0};
  const double sd = static_cast<double>(s);
  const double n = kN;
  const double n_pow = std::pow(n, -sd);

  double correction = 0.0;
  double rising = sd;  // s (s+1) ... (s+2j-2)
  double factorial = 2.0;  // (2j)!
  double n_power = n_pow / n;  // N^{-s-2j+1}
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    correction += kBernoulli[j - 1] / factorial * rising * n_power;
    rising *= (sd + 2.0 * j - 1.0) * (sd + 2.0 * j);
    factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    n_power /= n * n;
  }
  double sum = correction + 0.5 * n_pow + n * n_pow / (sd - 1.0);
  for (int k = kN - 1; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -sd);
  }
  return sum;
}

}  // namespace armour::specialfn
