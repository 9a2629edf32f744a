#pragma once

// Thin-shell field solution for the equivalent tube around the twisted cores,
// the apparent armour loss and the IEC 60287 armour loss factor lambda_2.
//
// With g = p_c / (2 pi R) and mu_e the relative quadratic form of the tube
// tensor along the core lay,
//
//   mu_e  = (mu_phiphi g^2 - 2 g mu_zphi + mu_zz) / mu0
//   xi_m  = 1 / (R I_m(eta_m R) K_m(eta_m R))
//   s_m   = 1 / (1 + eta_m^2 mu_e t / xi_m)
//   dS    = j omega 2 pi R t mu0 sum_m s_m (mu_e - g^2 - 1) |H_m(R)|^2
//   dS_l  = j omega 2 pi R t mu0 sum_m s_m mu_e |H_m(R)|^2
//   lambda_2 = Re(dS_l) / (3 R_ac I_c^2)
//
// Both mu_e occurrences are relative. The lambda_2 shortcut drops g^2 + 1
// against mu_e and is only meaningful when |mu_e| >> g^2 + 1.

#include <vector>

#include "armour/common.hpp"
#include "armour/exciting_field.hpp"
#include "armour/tube_transform.hpp"

namespace armour {

struct ShellHarmonic {
  int m = 0;
  double eta = 0.0;
  cplx H_exciting{};  // E_m K_m(eta_m R)
  cplx H_interior{};  // s_m H_exciting
  cplx xi{};
  cplx shielding_factor{};
};

struct ShellSolution {
  cplx mu_e{};      // relative
  double g = 0.0;   // p_c / (2 pi R)
  std::vector<ShellHarmonic> harmonics;
};

struct HarmonicLoss {
  int m = 0;
  cplx delta_S{};
  cplx delta_S_lambda{};
};

struct LossResult {
  cplx delta_S{};              // [VA/m]
  double armour_loss_w_per_m = 0.0;
  cplx delta_S_lambda{};       // dS with mu_e alone in the bracket
  cplx mu_e{};                 // relative
  double g = 0.0;
  std::vector<HarmonicLoss> per_harmonic;
  int m_used = 0;              // highest |m| retained
  double tail_bound = 0.0;     // estimated |omitted part of dS| [VA/m]
};

struct Lambda2Result {
  double value = 0.0;
  bool valid = false;          // |mu_e| > validity_factor (g^2 + 1)
  double neglected_fraction = 0.0;  // (g^2 + 1) / |mu_e|
};

inline constexpr double kDefaultValidityFactor = 10.0;

/// Relative effective permeability seen by the helical field of pitch p_c.
cplx mu_effective(const ComplexPermeabilityTensor& tensor, double p_c, double R);

/// xi_m from the Wronskian, 1 / (R I_m(eta R) K_m(eta R)).
cplx xi_closed_form(int m, double eta, double R);
/// xi_m = eta (I'_m / I_m - K'_m / K_m), evaluated at eta R.
cplx xi_derivative_form(int m, double eta, double R);

ShellSolution shell_solution(const std::vector<HarmonicFieldCoefficient>& coeffs,
                             const TubeEquivalent& tube, const CoreLayout& layout);

LossResult apparent_loss(const ShellSolution& solution, const TubeEquivalent& tube,
                         const CoreLayout& layout);

/// Throws DomainError for r_ac <= 0. lambda_2 = 0 when I_c = 0.
Lambda2Result lambda2(const LossResult& loss, double r_ac, const CoreLayout& layout,
                      double validity_factor = kDefaultValidityFactor);

/// Convenience: exciting field at R, shell solution and loss in one call.
LossResult armour_loss(const CoreLayout& layout, const TubeEquivalent& tube, int m_max = 30);

}  // namespace armour
