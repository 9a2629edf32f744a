#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "armour/armour_loss.hpp"
#include "armour/oracle.hpp"
#include "armour/specialfn.hpp"

namespace armour::oracle {

std::string OracleReport::to_line() const {
  return fmt::format(
      "{:<34} main={:+.12e}{:+.12e}j oracle={:+.12e}{:+.12e}j rel_err={:.3e} tol={:.1e} "
      "converged={} {}",
      quantity, main_value.real(), main_value.imag(), oracle_value.real(), oracle_value.imag(),
      rel_error, tolerance, converged ? "yes" : "no", passed() ? "PASS" : "FAIL");
}

OracleReport make_report(std::string quantity, cplx main_value, cplx oracle_value, bool converged,
                         double tolerance) {
  OracleReport r;
  r.quantity = std::move(quantity);
  r.main_value = main_value;
  r.oracle_value = oracle_value;
  const double scale = std::max(std::abs(oracle_value), std::numeric_limits<double>::min());
  r.rel_error = std::abs(main_value - oracle_value) / scale;
  r.converged = converged;
  r.tolerance = tolerance;
  return r;
}

std::vector<OracleReport> validate_design(const CableDesign& design) {
  design.validate();
  const auto& a = design.armour;
  const auto& l = design.layout;
  const auto coupling = design.solver.coupling;
  std::vector<OracleReport> out;

  const cplx x = a.kappa() * a.wire_radius;
  for (int m = 0; m <= 2; ++m) {
    const HpValue hp = hp_bessel_i(m, x);
    out.push_back(make_report(fmt::format("I_{}(kappa r)", m), specialfn::bessel_i(m, x),
                              hp.value, hp.converged(), 1e-10));
  }

  const auto series = harmonic_series(l, a.mean_radius, 8);
  for (std::size_t i = 0; i < std::min<std::size_t>(3, series.size()); ++i) {
    const auto& c = series[i];
    const int am = std::abs(c.m);
    const double z = c.eta * a.mean_radius;
    const HpValue k = hp_bessel_k(am, z);
    out.push_back(make_report(fmt::format("K_{}(eta R)", am), specialfn::bessel_k(am, z), k.value,
                              k.converged(), 1e-10));
    const HpValue e = hp_field_coefficient(l, c.m);
    out.push_back(
        make_report(fmt::format("E_{}", c.m), c.E, e.value, e.converged(), 1e-10));
    const HpValue xi = hp_xi(am, c.eta, a.mean_radius);
    out.push_back(make_report(fmt::format("xi_{}", am), xi_closed_form(am, c.eta, a.mean_radius),
                              xi.value, xi.converged(), 1e-10));
  }

  const HpValue mz = hp_mu_longitudinal(a);
  out.push_back(make_report("mu_z'", mu_longitudinal(a), mz.value, mz.converged(), 1e-10));
  const HpValue mphi = hp_mu_transverse_m1(a, coupling);
  out.push_back(make_report("mu_phi' (M=1)", mu_transverse(a, 1, coupling), mphi.value,
                            mphi.converged(), 1e-10));

  const double d = local_spacing(a);
  for (const auto& [m, n] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{1, 3}}) {
    const CarsonResult c = carson_reexpansion_check(m, n, d, 0.5 * d, 20000, coupling);
    out.push_back(make_report(fmt::format("f_{}{} (lattice sum)", m, n), c.closed, c.direct,
                              c.converged, 1e-9));
  }

  const int M = design.solver.transverse_order;
  const double H_e = 1000.0;
  const cplx ws = wire_string_loss(a, H_e, M, coupling);
  out.push_back(make_report("wire string vs tube loss", ws,
                            equivalent_tube_loss(a, H_e, M, coupling), true, 1e-12));
  const LineIntegralResult app = line_integral_loss(a, H_e, M, 2.0 * a.wire_radius, coupling);
  out.push_back(make_report("wire string (line integral)", ws, app.delta_S, app.converged, 1e-5));

  for (const double phi : {0.0, 0.9, 2.3}) {
    const double z = 0.17 * std::abs(l.pitch);
    const FieldSample s = field_hz(l, a.mean_radius, phi, z, design.solver.m_max);
    const BiotSavartResult bs = biot_savart_oracle(l, a.mean_radius, phi, z, 1000, 1e-6);
    out.push_back(make_report(fmt::format("H_z(R, {}, {:.3g}) Biot-Savart", phi, z), s.value,
                              bs.value, bs.converged, 1e-3));
  }
  return out;
}

}  // namespace armour::oracle
