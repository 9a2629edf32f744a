#pragma once

// Brute-force and high-precision reference implementations. They share no
// numerical code with the main path: Bessel functions are summed from their
// series in 50- and 100-digit arithmetic, the multipole re-expansion is
// checked by direct lattice summation, and the wire-string loss by adaptive
// quadrature of the response potential.

#include <string>
#include <vector>

#include "armour/common.hpp"
#include "armour/design.hpp"
#include "armour/exciting_field.hpp"
#include "armour/tube_transform.hpp"

namespace armour::oracle {

using armour::biot_savart_oracle;
using armour::BiotSavartResult;

struct OracleReport {
  std::string quantity;
  cplx main_value{};
  cplx oracle_value{};
  double rel_error = 0.0;  // |main - oracle| / max(|oracle|, eps)
  bool converged = false;  // oracle passed its own two-resolution check
  double tolerance = 0.0;

  bool passed() const { return converged && rel_error <= tolerance; }
  /// One line: name, values, error, tolerance, PASS/FAIL.
  std::string to_line() const;
};

OracleReport make_report(std::string quantity, cplx main_value, cplx oracle_value, bool converged,
                         double tolerance);

/// Value rounded to double from the 100-digit evaluation, plus the relative
/// difference to the 50-digit evaluation.
struct HpValue {
  cplx value{};
  double self_rel_diff = 0.0;
  bool converged() const { return self_rel_diff <= 1e-20; }
};

HpValue hp_bessel_i(int m, cplx z);
/// Logarithmic ascending series; fine while the cancellation (~2|z|/ln 10
/// digits) leaves enough of the working precision, i.e. |z| up to ~50.
HpValue hp_bessel_k(int m, cplx z);
HpValue hp_mu_longitudinal(const ArmourSpec& spec);
HpValue hp_p(const ArmourSpec& spec, int m);
HpValue hp_q(const ArmourSpec& spec, int m);
/// One-unknown mu_phi' = mu0 (1 + 2 q_1 / (p_1 - q_1 r^2 f_11)).
HpValue hp_mu_transverse_m1(const ArmourSpec& spec, CouplingModel model);
HpValue hp_field_coefficient(const CoreLayout& layout, int m);
HpValue hp_xi(int m, double eta, double R);

/// Coefficient of rho^n cos(n phi) in the re-expansion of
/// sum_{k != 0} cos(m phi_k) / rho_k^m about the wire at the origin; n >= 0.
double reexpansion_coefficient(int m, int n, double spacing, CouplingModel model);

struct CarsonResult {
  double direct = 0.0;     // extrapolated lattice sum
  double closed = 0.0;     // reexpansion_coefficient (n >= 1: coupling_coefficient)
  double rel_error = 0.0;
  bool converged = false;  // Richardson estimates at k_max and k_max / 2 agree
};

/// n-th cosine harmonic of the direct lattice sum on a circle of radius rho,
/// divided by rho^n (256 trapezoid samples), with two-step Richardson
/// extrapolation in the number of wires. rho = 0 evaluates the n = 0 term
/// pointwise. Requires 0 <= rho < spacing and k_max >= 10^4.
CarsonResult carson_reexpansion_check(int m, int n, double spacing, double rho, long k_max,
                                      CouplingModel model = CouplingModel::along_field);

/// j omega 2 pi N D_1 H_e^* with D_1 from the M-term system.
cplx wire_string_loss(const ArmourSpec& spec, double H_e, int M,
                      CouplingModel model = CouplingModel::along_field);
/// j omega (mu_phi' - mu0) |H_e|^2 N pi r^2.
cplx equivalent_tube_loss(const ArmourSpec& spec, double H_e, int M,
                          CouplingModel model = CouplingModel::along_field);

struct LineIntegralResult {
  cplx integral{};  // int A_r(x0, y) dy over the N-wire string
  cplx delta_S{};   // j omega 2 H_e^* integral
  double quadrature_error = 0.0;
  bool converged = false;
};

/// Adaptive Gauss-Kronrod integration along the line x = x0 (x0 > r) of the
/// response potential of N wires at y_k = (k - (N-1)/2) d_a', each carrying
/// all M multipoles D_m cos(m phi_k) / rho_k^m.
LineIntegralResult line_integral_loss(const ArmourSpec& spec, double H_e, int M, double x0,
                                      CouplingModel model = CouplingModel::along_field);

/// The suite behind `armour-loss validate`: special functions at the design's
/// arguments, closed forms, Carson, line-integral and Biot-Savart.
std::vector<OracleReport> validate_design(const CableDesign& design);

}  // namespace armour::oracle
