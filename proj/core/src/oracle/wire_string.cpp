#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "armour/oracle.hpp"

namespace armour::oracle {
namespace {

using boost::math::quadrature::gauss_kronrod;

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

template <unsigned Points, class F>
Integral integrate_line(F&& f, const std::vector<double>& breaks) {
  Integral out;
  const double inf = std::numeric_limits<double>::infinity();
  auto add = [&](double a, double b) {
    double err = 0.0;
    out.value += gauss_kronrod<double, Points>::integrate(f, a, b, 12, 1e-12, &err);
    out.error += std::abs(err);
  };
  add(-inf, breaks.front());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    add(breaks[i], breaks[i + 1]);
  }
  add(breaks.back(), inf);
  return out;
}

}  // namespace

cplx wire_string_loss(const ArmourSpec& spec, double H_e, int M, CouplingModel model) {
  spec.validate();
  const auto coeffs = transverse_response_full(spec, H_e, M, model);
  return cplx{0.0, spec.omega} * 2.0 * kPi * static_cast<double>(spec.wire_count) *
         coeffs.front().D * H_e;
}

cplx equivalent_tube_loss(const ArmourSpec& spec, double H_e, int M, CouplingModel model) {
  spec.validate();
  const double r = spec.wire_radius;
  const cplx mu_phi = mu_transverse(spec, M, model);
  return cplx{0.0, spec.omega} * (mu_phi - kMu0) * H_e * H_e *
         (static_cast<double>(spec.wire_count) * kPi * r * r);
}

LineIntegralResult line_integral_loss(const ArmourSpec& spec, double H_e, int M, double x0,
                                      CouplingModel model) {
  spec.validate();
  if (!(x0 > spec.wire_radius)) {
    throw DomainError("Integration line must lie outside the wires (x0 > r)");
  }
  const auto coeffs = transverse_response_full(spec, H_e, M, model);
  const double d = local_spacing(spec);
  const int N = spec.wire_count;
  std::vector<double> centres(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k) {
    centres[static_cast<std::size_t>(k)] = (k - 0.5 * (N - 1)) * d;
  }
  std::vector<double> breaks;
  breaks.push_back(centres.front() - 0.5 * d);
  for (double c : centres) {
    breaks.push_back(c + 0.5 * d);
  }

  // A_r(x0, y) = sum_k sum_m D_m Re[(x0 + j (y - y_k))^-m]
  auto potential = [&](double y, bool imag_part) {
    double acc = 0.0;
    for (double yk : centres) {
      const cplx w = 1.0 / cplx{x0, y - yk};
      cplx wm = w;
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const cplx D = coeffs[i].D;
        acc += (imag_part ? D.imag() : D.real()) * wm.real();
        wm *= w;
      }
    }
    return acc;
  };
  auto re = [&](double y) { return potential(y, false); };
  auto im = [&](double y) { return potential(y, true); };

  const Integral re61 = integrate_line<61>(re, breaks);
  const Integral im61 = integrate_line<61>(im, breaks);
  const Integral re31 = integrate_line<31>(re, breaks);
  const Integral im31 = integrate_line<31>(im, breaks);

  LineIntegralResult out;
  out.integral = {re61.value, im61.value};
  out.delta_S = cplx{0.0, spec.omega} * 2.0 * H_e * out.integral;
  const double two_rule = std::abs(out.integral - cplx{re31.value, im31.value});
  out.quadrature_error = std::max(re61.error + im61.error, two_rule);
  out.converged = out.quadrature_error <= 1e-9 * std::abs(out.integral);
  return out;
}

}  // namespace armour::oracle
