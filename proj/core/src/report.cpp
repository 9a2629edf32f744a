#include "armour/report.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "armour/version.hpp"

namespace armour {
namespace {

using nlohmann::ordered_json;

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::string header_block(const CableDesign& design, const std::string& extra) {
  std::string out = fmt::format("# armour-loss {}\n", kVersion);
  out += fmt::format(
      "# solver: m_max={} transverse_order={} tail_tol={} coupling={} validity_factor={}\n",
      design.solver.m_max, design.solver.transverse_order, design.solver.tail_tol,
      to_string(design.solver.coupling), design.solver.validity_factor);
  out += extra;
  out += "# design:\n";
  std::istringstream in(serialize_design(design));
  std::string line;
  while (std::getline(in, line)) {
    out += "#   " + line + "\n";
  }
  return out;
}

const char* kResultColumns =
    "wire_count,d_a_over_2r,t_m,theta_a_rad,mu_phi_rel_re,mu_phi_rel_im,mu_z_rel_re,mu_z_rel_im,"
    "mu_e_rel_re,mu_e_rel_im,dS_re,dS_im,loss_w_per_m,dS_lambda_re,lambda2,lambda2_valid,m_used,"
    "tail_bound";
constexpr int kResultColumnCount = 18;

std::string result_fields(const CableDesign& d, const RunResult& r) {
  const auto& t = r.tube;
  const cplx mphi = t.mu_phi_prime / kMu0;
  const cplx mz = t.mu_z_prime / kMu0;
  const auto& l = r.loss;
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                     d.armour.wire_count, num(t.d_a_local / (2.0 * d.armour.wire_radius)),
                     num(t.t), num(t.theta_a), num(mphi.real()), num(mphi.imag()),
                     num(mz.real()), num(mz.imag()), num(l.mu_e.real()), num(l.mu_e.imag()),
                     num(l.delta_S.real()), num(l.delta_S.imag()), num(l.armour_loss_w_per_m),
                     num(l.delta_S_lambda.real()),
                     r.lambda2 ? num(r.lambda2->value) : std::string{},
                     r.lambda2 ? (r.lambda2->valid ? "1" : "0") : "", l.m_used,
                     num(l.tail_bound));
}

std::string empty_fields(int n) { return std::string(static_cast<std::size_t>(n - 1), ','); }

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json result_json(const CableDesign& d, const RunResult& r) {
  const auto& t = r.tube;
  const auto& l = r.loss;
  ordered_json tube = {
      {"d_a_local_m", t.d_a_local},
      {"d_a_over_2r", t.d_a_local / (2.0 * d.armour.wire_radius)},
      {"t_m", t.t},
      {"theta_a_rad", t.theta_a},
      {"mu_phi_rel", complex_json(t.mu_phi_prime / kMu0)},
      {"mu_z_rel", complex_json(t.mu_z_prime / kMu0)},
      {"tensor_rel",
       {{"rho_rho", complex_json(t.tensor.rho_rho / kMu0)},
        {"phi_phi", complex_json(t.tensor.phi_phi / kMu0)},
        {"z_z", complex_json(t.tensor.z_z / kMu0)},
        {"z_phi", complex_json(t.tensor.z_phi / kMu0)}}},
  };
  ordered_json harmonics = ordered_json::array();
  for (const auto& h : l.per_harmonic) {
    harmonics.push_back({{"m", h.m},
                         {"dS", complex_json(h.delta_S)},
                         {"dS_lambda", complex_json(h.delta_S_lambda)}});
  }
  ordered_json out = {
      {"wire_count", d.armour.wire_count},
      {"transverse_order", r.transverse_order},
      {"tube", tube},
      {"mu_e_rel", complex_json(l.mu_e)},
      {"dS_va_per_m", complex_json(l.delta_S)},
      {"loss_w_per_m", l.armour_loss_w_per_m},
      {"dS_lambda_va_per_m", complex_json(l.delta_S_lambda)},
      {"m_used", l.m_used},
      {"tail_bound", l.tail_bound},
      {"thin_shell_warning", r.thin_shell_warning},
      {"per_harmonic", harmonics},
  };
  if (r.lambda2) {
    out["lambda2"] = {{"value", r.lambda2->value},
                      {"valid", r.lambda2->valid},
                      {"neglected_fraction", r.lambda2->neglected_fraction}};
  }
  return out;
}

ordered_json settings_json(const CableDesign& d) {
  return {{"version", kVersion},
          {"m_max", d.solver.m_max},
          {"transverse_order", d.solver.transverse_order},
          {"tail_tol", d.solver.tail_tol},
          {"coupling", to_string(d.solver.coupling)},
          {"validity_factor", d.solver.validity_factor},
          {"design", serialize_design(d)}};
}

std::string sweep_value_text(SweepParameter p, cplx v) {
  if (p == SweepParameter::mu_r) {
    return fmt::format("{},{}", num(v.real()), num(v.imag()));
  }
  return num(v.real());
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "csv") {
    return OutputFormat::csv;
  }
  if (name == "json") {
    return OutputFormat::json;
  }
  throw ValidationError(fmt::format("unknown output format '{}' (expected csv or json)", name));
}

std::string render_single(const CableDesign& design, const RunResult& result, OutputFormat format) {
  if (format == OutputFormat::json) {
    ordered_json out = {{"settings", settings_json(design)},
                        {"result", result_json(design, result)}};
    return out.dump(2) + "\n";
  }
  std::string out = header_block(design, "");
  out += kResultColumns;
  out += "\n";
  out += result_fields(design, result);
  out += "\n";
  return out;
}

std::string render_sweep(const CableDesign& design, const SweepSpec& sweep,
                         const SweepOptions& options, const std::vector<SweepRow>& rows,
                         OutputFormat format) {
  const std::string pname = sweep_parameter_name(sweep.parameter);
  if (format == OutputFormat::json) {
    ordered_json list = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json item = {{"value", sweep.parameter == SweepParameter::mu_r
                                         ? complex_json(row.value)
                                         : ordered_json(row.value.real())}};
      if (!row.error.empty()) {
        item["error"] = row.error;
        item["error_code"] = row.error_code;
      } else {
        const CableDesign d = apply_sweep_value(design, sweep.parameter, row.value);
        item["result"] = result_json(d, *row.primary);
        if (row.exact) {
          item["exact"] = result_json(d, *row.exact);
        }
      }
      list.push_back(item);
    }
    ordered_json out = {{"settings", settings_json(design)},
                        {"sweep", {{"parameter", pname},
                                   {"both_truncations", options.both_truncations},
                                   {"exact_order", options.exact_order}}},
                        {"rows", list}};
    return out.dump(2) + "\n";
  }

  std::string extra = fmt::format("# sweep: parameter={} values={}\n", pname, rows.size());
  if (options.both_truncations) {
    extra += fmt::format("# exact_* columns: transverse_order={}\n", options.exact_order);
  }
  std::string out = header_block(design, extra);
  const bool complex_value = sweep.parameter == SweepParameter::mu_r;
  out += complex_value ? "mu_r_re,mu_r_im," : pname + ",";
  out += kResultColumns;
  if (options.both_truncations) {
    out += ",exact_mu_phi_rel_re,exact_mu_phi_rel_im,exact_loss_w_per_m,exact_lambda2";
  }
  out += ",error\n";
  for (const auto& row : rows) {
    out += sweep_value_text(sweep.parameter, row.value) + ",";
    if (!row.error.empty()) {
      out += empty_fields(kResultColumnCount);
      if (options.both_truncations) {
        out += ",,,,";
      }
      std::string msg = row.error;
      std::replace(msg.begin(), msg.end(), '"', '\'');
      out += fmt::format(",\"{}\"\n", msg);
      continue;
    }
    const CableDesign d = apply_sweep_value(design, sweep.parameter, row.value);
    out += result_fields(d, *row.primary);
    if (options.both_truncations) {
      const auto& e = *row.exact;
      const cplx mphi = e.tube.mu_phi_prime / kMu0;
      out += fmt::format(",{},{},{},{}", num(mphi.real()), num(mphi.imag()),
                         num(e.loss.armour_loss_w_per_m),
                         e.lambda2 ? num(e.lambda2->value) : std::string{});
    }
    out += ",\n";
  }
  return out;
}

}  // namespace armour
