// armour-loss: evaluate, sweep and validate armour loss designs.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical or oracle failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "armour/design.hpp"
#include "armour/report.hpp"
#include "armour/runner.hpp"
#include "armour/version.hpp"
#ifdef ARMOUR_LOSS_HAVE_ORACLES
#include "armour/oracle.hpp"
#endif

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string design_path;
  std::optional<int> m_max;
  std::optional<int> transverse_order;
  std::optional<std::string> coupling;
  std::string emit = "csv";
  std::string out_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("design", c.design_path, "Design file (key = value)")->required();
  cmd->add_option("--m-max", c.m_max, "Highest field harmonic |m| (1..63)");
  cmd->add_option("--transverse-order", c.transverse_order, "Transverse unknowns per wire M (1..64)");
  cmd->add_option("--coupling", c.coupling, "Re-expansion sign model: along_field or printed");
  cmd->add_option("--emit", c.emit, "Output format: csv or json");
  cmd->add_option("--out", c.out_path, "Write output to this path instead of stdout");
}

armour::CableDesign load(const Common& c) {
  armour::CableDesign d = armour::load_design(c.design_path);
  if (c.m_max) {
    d.solver.m_max = *c.m_max;
  }
  if (c.transverse_order) {
    d.solver.transverse_order = *c.transverse_order;
  }
  if (c.coupling) {
    if (*c.coupling == "along_field") {
      d.solver.coupling = armour::CouplingModel::along_field;
    } else if (*c.coupling == "printed") {
      d.solver.coupling = armour::CouplingModel::printed;
    } else {
      throw armour::ValidationError(
          fmt::format("--coupling: expected along_field or printed, got '{}'", *c.coupling));
    }
  }
  d.validate();
  return d;
}

void write(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) {
    throw armour::ValidationError(fmt::format("cannot write '{}'", c.out_path));
  }
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steel-wire armour loss of three-core cables"};
  app.set_version_flag("--version", std::string(armour::kVersion));
  app.require_subcommand(1);

  Common eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate one design");
  add_common(eval, eval_opts);

  Common sweep_opts;
  std::string param;
  std::string values;
  bool both = false;
  int exact_order = 17;
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter of a design");
  add_common(sweep, sweep_opts);
  sweep->add_option("--param", param, "N, p_a, p_c, mu_r or I_c")->required();
  sweep->add_option("--values", values,
                    "Comma list, start:stop:step range, or re,im;re,im for mu_r")
      ->required();
  sweep->add_flag("--both-truncations", both, "Also evaluate the exact-order transverse system");
  sweep->add_option("--exact-order", exact_order, "Transverse order of the exact columns");

  Common validate_opts;
  auto* validate = app.add_subcommand("validate", "Run the oracle suite on a design");
  add_common(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (*eval) {
      const auto design = load(eval_opts);
      const auto format = armour::parse_output_format(eval_opts.emit);
      const auto result = armour::run_single(design);
      write(eval_opts, armour::render_single(design, result, format));
      return 0;
    }
    if (*sweep) {
      const auto design = load(sweep_opts);
      const auto format = armour::parse_output_format(sweep_opts.emit);
      armour::SweepSpec spec;
      spec.parameter = armour::parse_sweep_parameter(param);
      spec.values = armour::parse_sweep_values(spec.parameter, values);
      armour::SweepOptions options;
      options.both_truncations = both;
      options.exact_order = exact_order;
      options.threads = armour::threads_from_environment();
      const auto rows = armour::run_sweep(design, spec, options);
      write(sweep_opts, armour::render_sweep(design, spec, options, rows, format));
      int rc = 0;
      for (const auto& row : rows) {
        if (row.error_code != 0) {
          std::cerr << "row " << sweep_parameter_name(spec.parameter) << "=" << row.value.real()
                    << ": " << row.error << "\n";
          rc = std::max(rc, row.error_code);
        }
      }
      return rc;
    }
    if (*validate) {
#ifdef ARMOUR_LOSS_HAVE_ORACLES
      const auto design = load(validate_opts);
      const auto reports = armour::oracle::validate_design(design);
      std::string text;
      bool ok = true;
      for (const auto& r : reports) {
        text += r.to_line() + "\n";
        ok = ok && r.passed();
      }
      write(validate_opts, text);
      return ok ? 0 : kExitNumerical;
#else
      std::cerr << "armour-loss was built without oracles\n";
      return kExitNumerical;
#endif
    }
  } catch (const armour::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const armour::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
