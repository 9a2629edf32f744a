#include <array>
#include <cmath>

#include <boost/math/special_functions/zeta.hpp>
#include <fmt/format.h>

#include "armour/oracle.hpp"

namespace armour::oracle {
namespace {

constexpr int kSamples = 256;

// Wires at c_k = +-k i (along the field) or +-k (across), in units of the
// spacing. Returns the n-th cosine harmonic of sum_k Re[(z - c)^-m] on
// |z| = rho, for k in (k_lo, k_hi], summed from the far end inwards.
double block_harmonic(int m, int n, double rho, long k_lo, long k_hi, CouplingModel model) {
  const cplx unit = model == CouplingModel::along_field ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
  std::array<cplx, kSamples> z{};
  std::array<double, kSamples> weight{};
  for (int j = 0; j < kSamples; ++j) {
    const double phi = 2.0 * kPi * j / kSamples;
    z[static_cast<std::size_t>(j)] = std::polar(rho, phi);
    weight[static_cast<std::size_t>(j)] = std::cos(n * phi);
  }
  double total = 0.0;
  for (int j = 0; j < kSamples; ++j) {
    const cplx zj = z[static_cast<std::size_t>(j)];
    double s = 0.0;
    for (long k = k_hi; k > k_lo; --k) {
      const cplx c = static_cast<double>(k) * unit;
      const cplx w1 = 1.0 / (zj - c);
      const cplx w2 = 1.0 / (zj + c);
      cplx p1 = w1;
      cplx p2 = w2;
      for (int e = 1; e < m; ++e) {
        p1 *= w1;
        p2 *= w2;
      }
      s += p1.real() + p2.real();
    }
    total += weight[static_cast<std::size_t>(j)] * s;
  }
  const double norm = n == 0 ? 1.0 / kSamples : 2.0 / kSamples;
  return total * norm / std::pow(rho, n);
}

double pointwise_at_origin(int m, long k_lo, long k_hi, CouplingModel model) {
  const cplx unit = model == CouplingModel::along_field ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
  double s = 0.0;
  for (long k = k_hi; k > k_lo; --k) {
    const cplx c = static_cast<double>(k) * unit;
    s += std::pow(-c, -m).real() + std::pow(c, -m).real();
  }
  return s;
}

// Two-step Richardson for S(K) with tail a K^-p + b K^-(p+1) + ...
double richardson(double s_quarter, double s_half, double s_full, int p) {
  const double f1 = std::ldexp(1.0, p);
  const double f2 = std::ldexp(1.0, p + 1);
  const double r_lo = (f1 * s_half - s_quarter) / (f1 - 1.0);
  const double r_hi = (f1 * s_full - s_half) / (f1 - 1.0);
  return (f2 * r_hi - r_lo) / (f2 - 1.0);
}

}  // namespace

double reexpansion_coefficient(int m, int n, double spacing, CouplingModel model) {
  if (m < 1 || n < 0 || m + n < 2) {
    throw DomainError(fmt::format("re-expansion coefficient needs m >= 1, n >= 0, m + n >= 2"));
  }
  if ((m + n) % 2 != 0) {
    return 0.0;
  }
  // sum over c = +-k d of (-1)^m (m)_n / n! c^-(m+n)
  double rising = 1.0;
  for (int k = 0; k < n; ++k) {
    rising *= static_cast<double>(m + k) / static_cast<double>(k + 1);
  }
  const int s = m + n;
  double phase = (m % 2 == 0) ? 1.0 : -1.0;
  if (model == CouplingModel::along_field) {
    phase *= ((s / 2) % 2 == 0) ? 1.0 : -1.0;  // i^-(m+n)
  }
  return phase * 2.0 * rising * boost::math::zeta(static_cast<double>(s)) / std::pow(spacing, s);
}

CarsonResult carson_reexpansion_check(int m, int n, double spacing, double rho, long k_max,
                                      CouplingModel model) {
  if (!(spacing > 0.0) || !(rho >= 0.0) || !(rho < spacing)) {
    throw DomainError("Carson check needs 0 <= rho < spacing");
  }
  if (k_max < 10000) {
    throw DomainError("Carson check needs k_max >= 10^4");
  }
  if (rho == 0.0 && n != 0) {
    throw DomainError("Carson check at rho = 0 only has the n = 0 term");
  }
  if (m < 1 || n < 0 || m + n < 2) {
    throw DomainError("Carson check needs m >= 1, n >= 0, m + n >= 2");
  }
  const double x = rho / spacing;
  const long k8 = k_max / 8;
  const long k4 = k_max / 4;
  const long k2 = k_max / 2;
  auto block = [&](long lo, long hi) {
    return rho == 0.0 ? pointwise_at_origin(m, lo, hi, model)
                      : block_harmonic(m, n, x, lo, hi, model);
  };
  const double b1 = block(0, k8);
  const double b2 = block(k8, k4);
  const double b3 = block(k4, k2);
  const double b4 = block(k2, k_max);
  const double s8 = b1;
  const double s4 = s8 + b2;
  const double s2 = s4 + b3;
  const double s1 = s2 + b4;
  const int p = m + n - 1;

  const double scale = std::pow(spacing, m + n);
  CarsonResult out;
  out.direct = richardson(s4, s2, s1, p) / scale;
  const double coarse = richardson(s8, s4, s2, p) / scale;
  out.closed = n >= 1 ? coupling_coefficient(m, n, spacing, model)
                      : reexpansion_coefficient(m, n, spacing, model);
  const double ref = std::max(std::abs(out.closed), 1e-300 / scale);
  out.rel_error = out.closed == 0.0 ? std::abs(out.direct) * scale
                                    : std::abs(out.direct - out.closed) / ref;
  const double self = out.direct == 0.0 ? 0.0 : std::abs(out.direct - coarse) / std::abs(out.direct);
  out.converged = out.closed == 0.0 ? std::abs(out.direct - coarse) * scale < 1e-9 : self < 1e-8;
  return out;
}

}  // namespace armour::oracle
