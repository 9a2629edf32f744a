#include "armour/armour_loss.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include <fmt/format.h>

#include "armour/specialfn.hpp"
#include "series_tail.hpp"

namespace armour {

cplx mu_effective(const ComplexPermeabilityTensor& tensor, double p_c, double R) {
  const double g = p_c / (2.0 * kPi * R);
  return (tensor.phi_phi * g * g - 2.0 * g * tensor.z_phi + tensor.z_z) / kMu0;
}

cplx xi_closed_form(int m, double eta, double R) {
  const double x = eta * R;
  return 1.0 / (R * specialfn::bessel_i(m, x) * specialfn::bessel_k(m, x));
}

cplx xi_derivative_form(int m, double eta, double R) {
  const double x = eta * R;
  const cplx i_ratio = specialfn::bessel_i_prime(m, x) / specialfn::bessel_i(m, x);
  const cplx k_ratio = specialfn::bessel_k_prime(m, x) / specialfn::bessel_k(m, x);
  return eta * (i_ratio - k_ratio);
}

ShellSolution shell_solution(const std::vector<HarmonicFieldCoefficient>& coeffs,
                             const TubeEquivalent& tube, const CoreLayout& layout) {
  ShellSolution out;
  const double R = tube.mean_radius;
  out.mu_e = mu_effective(tube.tensor, layout.pitch, R);
  out.g = layout.pitch / (2.0 * kPi * R);
  out.harmonics.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    if (c.m == 0) {
      continue;
    }
    ShellHarmonic h;
    h.m = c.m;
    h.eta = c.eta;
    h.H_exciting = c.H_at_rho;
    h.xi = xi_closed_form(std::abs(c.m), c.eta, R);
    h.shielding_factor = 1.0 / (1.0 + c.eta * c.eta * out.mu_e * tube.t / h.xi);
    h.H_interior = h.shielding_factor * h.H_exciting;
    out.harmonics.push_back(h);
  }
  return out;
}

LossResult apparent_loss(const ShellSolution& solution, const TubeEquivalent& tube,
                         const CoreLayout& layout) {
  LossResult out;
  out.mu_e = solution.mu_e;
  out.g = solution.g;
  const double R = tube.mean_radius;
  const cplx prefactor = cplx{0.0, layout.omega} * 2.0 * kPi * R * tube.t * kMu0;
  const cplx bracket = solution.mu_e - solution.g * solution.g - 1.0;

  double prev_mag = 0.0;
  double last_mag = 0.0;
  int prev_order = 0;
  for (const auto& h : solution.harmonics) {
    const double h2 = std::norm(h.H_exciting);
    HarmonicLoss term;
    term.m = h.m;
    term.delta_S = prefactor * h.shielding_factor * bracket * h2;
    term.delta_S_lambda = prefactor * h.shielding_factor * solution.mu_e * h2;
    out.delta_S += term.delta_S;
    out.delta_S_lambda += term.delta_S_lambda;
    out.per_harmonic.push_back(term);
    prev_mag = last_mag;
    prev_order = out.m_used;
    last_mag = std::abs(term.delta_S);
    out.m_used = std::abs(h.m);
  }
  out.armour_loss_w_per_m = out.delta_S.real();
  out.tail_bound = detail::geometric_tail(prev_mag, last_mag, out.m_used - prev_order);
  return out;
}

Lambda2Result lambda2(const LossResult& loss, double r_ac, const CoreLayout& layout,
                      double validity_factor) {
  if (!(r_ac > 0.0) || !std::isfinite(r_ac)) {
    throw DomainError(fmt::format("conductor AC resistance must be > 0 (got {})", r_ac));
  }
  Lambda2Result out;
  const double c = loss.g * loss.g + 1.0;
  const double mag = std::abs(loss.mu_e);
  out.neglected_fraction = mag > 0.0 ? c / mag : std::numeric_limits<double>::infinity();
  out.valid = mag > validity_factor * c;
  if (layout.current > 0.0) {
    out.value = loss.delta_S_lambda.real() / (3.0 * r_ac * layout.current * layout.current);
  }
  return out;
}

LossResult armour_loss(const CoreLayout& layout, const TubeEquivalent& tube, int m_max) {
  layout.validate();
  const auto coeffs = harmonic_series(layout, tube.mean_radius, m_max);
  return apparent_loss(shell_solution(coeffs, tube, layout), tube, layout);
}

}  // namespace armour
