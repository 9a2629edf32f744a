#pragma once

// Longitudinal auxiliary field of three helically twisted filamentary cores
// carrying a balanced three-phase current set.
//
//   H_z(rho, phi, z) = sum_m E_m K_|m|(eta_m rho) exp(j m (phi - 2 pi z / p_c))
//   eta_m = 2 pi |m| / |p_c|
//   E_m   = -(I_c / p_c) x I'_|m|(x) f(m),  x = eta_m a_p
//
// Core k (k = 0, 1, 2) sits at angle 2 pi k / 3 on the helix and carries
// I_c exp(-j 2 pi k s / 3) with s = +1 for positive sequence and -1 for
// negative sequence. The current is referenced to +z. With this pairing the
// surviving orders are m = 2 (mod 3) for positive sequence and m = 1 (mod 3)
// for negative sequence; the Biot-Savart integrator in this header is the
// independent check of both the selector and the sign of E_m.

#include <vector>

#include "armour/common.hpp"

namespace armour {

enum class PhaseSequence { positive, negative };

struct CoreLayout {
  double helix_radius = 0.0;  // a_p [m]
  double pitch = 0.0;         // p_c [m], sign gives lay direction
  double current = 0.0;       // I_c [A rms]
  double omega = 0.0;         // [rad/s]
  PhaseSequence sequence = PhaseSequence::positive;

  /// Throws ValidationError unless a_p > 0, p_c != 0, I_c >= 0, omega > 0.
  void validate() const;
};

struct HarmonicFieldCoefficient {
  int m = 0;
  double eta = 0.0;   // [1/m]
  cplx E{};           // [A/m]
  cplx H_at_rho{};    // E_m K_|m|(eta_m rho) [A/m]
};

struct FieldSample {
  cplx value{};
  double tail_bound = 0.0;  // estimate of |sum over |m| > m_max|
  int m_max = 0;
};

inline constexpr int kMaxFieldOrder = 63;

/// 0 or 3. Depends only on m mod 3 and the sequence.
int phase_selector(int m, PhaseSequence sequence = PhaseSequence::positive);

/// E_m and H_m(rho). rho must exceed a_p; m = 0 or a deselected order gives a
/// zero coefficient without touching any Bessel function.
HarmonicFieldCoefficient harmonic_coefficient(const CoreLayout& layout, int m, double rho);

/// The nonzero coefficients with 1 <= |m| <= m_max, ordered by |m|. For each
/// |m| exactly one of +m, -m survives the selector.
std::vector<HarmonicFieldCoefficient> harmonic_series(const CoreLayout& layout, double rho,
                                                      int m_max);

/// Partial sum over |m| <= m_max (1 <= m_max <= 63) with a geometric tail
/// estimate. Throws DomainError for rho <= a_p.
FieldSample field_hz(const CoreLayout& layout, double rho, double phi, double z, int m_max = 30);

struct BiotSavartResult {
  cplx value{};          // fine resolution
  cplx coarse{};         // half the resolution
  double rel_change = 0.0;
  bool converged = false;
};

/// H_z by Gauss-Legendre line integration over 40 pitch lengths of the three
/// filaments, at segments_per_pitch and 2 * segments_per_pitch. Throws
/// NumericalError when the two disagree by more than rel_tol.
BiotSavartResult biot_savart_oracle(const CoreLayout& layout, double rho, double phi, double z,
                                    int segments_per_pitch = 1000, double rel_tol = 1e-6);

}  // namespace armour
