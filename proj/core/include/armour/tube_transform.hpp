#pragma once

// Homogenization of N helically laid round wires into a thin non-conducting
// anisotropic tube.
//
// Local frame of one wire: z' along the wire, phi' across it in the tube
// surface, rho radial. mu_z' is the longitudinal response of a single round
// conductor; mu_phi' comes from the transverse problem of an infinite string
// of wires at spacing d_a' in a uniform field along the string, truncated to M
// multipole unknowns per wire.

#include <vector>

#include "armour/common.hpp"

namespace armour {

/// Sign convention of the multipole re-expansion coefficients f_mn.
///  along_field: wires strung along the applied field (the tube geometry).
///  printed:     wires strung across the field, i.e.
///               f_mn = (-1)^n (1 + (-1)^(m+n)) (m)_n / n! zeta(m+n) / d^(m+n).
/// The two differ by (-1)^((m+n)/2).
enum class CouplingModel { along_field, printed };

struct ArmourSpec {
  int wire_count = 0;      // N
  double wire_radius = 0;  // r [m]
  double mean_radius = 0;  // R [m]
  double pitch = 0;        // p_a [m], sign gives lay direction
  double conductivity = 0; // sigma [S/m]
  cplx mu_r{1.0, 0.0};
  double omega = 0;        // [rad/s]

  /// Throws ValidationError for N < 1, r <= 0, R <= 0, p_a == 0, sigma < 0,
  /// Re(mu_r) < 1, Im(mu_r) > 0, omega <= 0, or overlapping wires.
  void validate() const;

  cplx mu() const { return kMu0 * mu_r; }
  /// kappa = sqrt(j omega mu sigma), principal root.
  cplx kappa() const;
};

struct ComplexPermeabilityTensor {
  cplx rho_rho{};
  cplx phi_phi{};
  cplx z_z{};
  cplx z_phi{};  // equal to phi_z
};

struct TubeEquivalent {
  cplx mu_z_prime{};    // [H/m]
  cplx mu_phi_prime{};  // [H/m]
  double theta_a = 0;   // [rad], signed
  double d_a_local = 0; // [m]
  double t = 0;         // [m]
  double mean_radius = 0;
  ComplexPermeabilityTensor tensor;
};

struct PQ {
  cplx p{};
  cplx q{};
};

struct TransverseCoefficient {
  cplx A{};
  cplx D{};
};

struct TransverseOptions {
  int order = 1;  // M, number of multipole unknowns per wire
  CouplingModel coupling = CouplingModel::along_field;
};

inline constexpr int kMaxTransverseOrder = 64;

/// sqrt(1 + (2 pi R / p_a)^2)
double lay_factor(const ArmourSpec& spec);
/// d_a' = 2 pi R / (N lay_factor)
double local_spacing(const ArmourSpec& spec);
/// t = N r^2 / (2 R) lay_factor
double equivalent_thickness(const ArmourSpec& spec);
/// theta_a = atan(2 pi R / p_a)
double pitch_angle(const ArmourSpec& spec);

/// mu_z' = 2 mu I_1(kappa r) / (kappa r I_0(kappa r)); mu for sigma = 0.
cplx mu_longitudinal(const ArmourSpec& spec);

double coupling_coefficient(int m, int n, double spacing,
                            CouplingModel model = CouplingModel::along_field);

/// q_m = (I_m - (mu0/mu)(kappa r/m) I'_m) / 2, p_m = (I_m + (mu0/mu)(kappa r/m) I'_m) / 2.
PQ pq_coefficients(const ArmourSpec& spec, int m);

/// One-unknown closed form: D_1 = mu0 H_e q_1 r^2 / (p_1 - r^2 q_1 f_11).
TransverseCoefficient transverse_response_truncated(
    const ArmourSpec& spec, double H_e, CouplingModel model = CouplingModel::along_field);

/// M x M system p_m A_m - r^m sum_n f_mn r^n q_n A_n = mu0 H_e r delta_m1,
/// D_m = q_m r^m A_m. Index 0 of the result is m = 1.
std::vector<TransverseCoefficient> transverse_response_full(
    const ArmourSpec& spec, double H_e, int M, CouplingModel model = CouplingModel::along_field);
/// Same, at an explicit spacing instead of the one implied by N, R and p_a.
std::vector<TransverseCoefficient> transverse_response_full(const ArmourSpec& spec, double H_e,
                                                            int M, CouplingModel model,
                                                            double spacing);

/// mu_phi' = mu0 (1 + 2 D_1 / (mu0 H_e r^2)).
cplx mu_transverse(const ArmourSpec& spec, int M,
                   CouplingModel model = CouplingModel::along_field);
cplx mu_transverse(const ArmourSpec& spec, int M, CouplingModel model, double spacing);

/// Rotation of diag(mu0, mu_phi', mu_z') by theta_a about the radial axis.
ComplexPermeabilityTensor rotate_tensor(cplx mu_phi_prime, cplx mu_z_prime, double theta_a);

/// All tube quantities. Throws ValidationError if the wires overlap.
TubeEquivalent geometry(const ArmourSpec& spec, const TransverseOptions& options = {});

}  // namespace armour
