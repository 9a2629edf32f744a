#pragma once

// Cable design description and its flat "key = value" text form.
//
//   # comment
//   cores.helix_radius_m = 0.05225
//   cores.pitch_m = 1.2
//   cores.current_a = 1000
//   cores.sequence = positive          # or negative
//   electrical.omega_rad_s = 314.16
//   armour.wire_count = 135
//   armour.wire_radius_m = 0.0025
//   armour.mean_radius_m = 0.1156
//   armour.pitch_m = -100
//   armour.conductivity_s_m = 5.3763e6
//   armour.mu_r = 150,-50              # re,im
//   conductor.r_ac_ohm_m = 4e-5        # optional, enables lambda_2
//   solver.m_max = 30                  # optional from here on
//   solver.transverse_order = 1
//   solver.tail_tol = 1e-10
//   solver.coupling = along_field      # or printed
//   solver.validity_factor = 10

#include <optional>
#include <string>
#include <vector>

#include "armour/armour_loss.hpp"
#include "armour/exciting_field.hpp"
#include "armour/tube_transform.hpp"

namespace armour {

struct SolverSettings {
  int m_max = 30;
  int transverse_order = 1;
  double tail_tol = 1e-10;  // relative to |dS|
  CouplingModel coupling = CouplingModel::along_field;
  double validity_factor = kDefaultValidityFactor;
};

struct CableDesign {
  CoreLayout layout;
  ArmourSpec armour;  // armour.omega mirrors layout.omega
  std::optional<double> r_ac;
  SolverSettings solver;

  /// All component invariants plus 1 <= m_max <= 63, 1 <= M <= 64,
  /// tail_tol > 0, r_ac > 0 when present.
  void validate() const;
};

/// Parses the text form. Unknown keys, duplicates, malformed values and
/// missing required keys throw ValidationError. Line numbers are reported.
CableDesign parse_design(const std::string& text);
CableDesign load_design(const std::string& path);

/// Canonical text form; parse_design(serialize_design(d)) reproduces d exactly.
std::string serialize_design(const CableDesign& design);

enum class SweepParameter { wire_count, armour_pitch, core_pitch, mu_r, current };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::wire_count;
  std::vector<cplx> values;  // imaginary part used only for mu_r
};

/// Accepts N, p_a, p_c, mu_r, I_c.
SweepParameter parse_sweep_parameter(const std::string& name);
std::string sweep_parameter_name(SweepParameter p);

/// "25,35,45", "25:135:10" (inclusive range) or, for mu_r, "150,-50;600,-350".
std::vector<cplx> parse_sweep_values(SweepParameter p, const std::string& text);

/// The design with one parameter replaced. Throws ValidationError for a
/// non-integer wire count.
CableDesign apply_sweep_value(const CableDesign& design, SweepParameter p, cplx value);

std::string to_string(CouplingModel model);
std::string to_string(PhaseSequence sequence);

}  // namespace armour
