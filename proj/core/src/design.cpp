#include "armour/design.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

namespace armour {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) {
    throw ValidationError(fmt::format("{}: empty value", key));
  }
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ValidationError(fmt::format("{}: '{}' is not a finite number", key, s));
  }
  return v;
}

int parse_int(const std::string& key, const std::string& raw) {
  const double v = parse_double(key, raw);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ValidationError(fmt::format("{}: '{}' is not an integer", key, trim(raw)));
  }
  return static_cast<int>(v);
}

cplx parse_complex(const std::string& key, const std::string& raw) {
  const auto comma = raw.find(',');
  if (comma == std::string::npos) {
    return {parse_double(key, raw), 0.0};
  }
  return {parse_double(key, raw.substr(0, comma)), parse_double(key, raw.substr(comma + 1))};
}

CouplingModel parse_coupling(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "along_field") {
    return CouplingModel::along_field;
  }
  if (s == "printed") {
    return CouplingModel::printed;
  }
  throw ValidationError(fmt::format("{}: expected along_field or printed, got '{}'", key, s));
}

PhaseSequence parse_sequence(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "positive") {
    return PhaseSequence::positive;
  }
  if (s == "negative") {
    return PhaseSequence::negative;
  }
  throw ValidationError(fmt::format("{}: expected positive or negative, got '{}'", key, s));
}

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys = {
      "cores.helix_radius_m", "cores.pitch_m",         "cores.current_a",
      "electrical.omega_rad_s", "armour.wire_count",   "armour.wire_radius_m",
      "armour.mean_radius_m", "armour.pitch_m",        "armour.conductivity_s_m",
      "armour.mu_r"};
  return keys;
}

}  // namespace

void CableDesign::validate() const {
  layout.validate();
  armour.validate();
  if (armour.omega != layout.omega) {
    throw ValidationError("armour and core angular frequency differ");
  }
  if (solver.m_max < 1 || solver.m_max > kMaxFieldOrder) {
    throw ValidationError(
        fmt::format("solver.m_max must be in [1, {}] (got {})", kMaxFieldOrder, solver.m_max));
  }
  if (solver.transverse_order < 1 || solver.transverse_order > kMaxTransverseOrder) {
    throw ValidationError(fmt::format("solver.transverse_order must be in [1, {}] (got {})",
                                      kMaxTransverseOrder, solver.transverse_order));
  }
  if (!(solver.tail_tol > 0.0)) {
    throw ValidationError("solver.tail_tol must be > 0");
  }
  if (!(solver.validity_factor > 0.0)) {
    throw ValidationError("solver.validity_factor must be > 0");
  }
  if (r_ac && !(*r_ac > 0.0)) {
    throw ValidationError("conductor.r_ac_ohm_m must be > 0");
  }
}

CableDesign parse_design(const std::string& text) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(fmt::format("line {}: expected 'key = value'", lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!entries.emplace(key, std::make_pair(value, lineno)).second) {
      throw ValidationError(fmt::format("line {}: duplicate key '{}'", lineno, key));
    }
  }
  for (const auto& k : required_keys()) {
    if (!entries.count(k)) {
      throw ValidationError(fmt::format("missing required key '{}'", k));
    }
  }

  CableDesign d;
  for (const auto& [key, entry] : entries) {
    const auto& [value, ln] = entry;
    const std::string where = fmt::format("line {}: {}", ln, key);
    if (key == "cores.helix_radius_m") {
      d.layout.helix_radius = parse_double(where, value);
    } else if (key == "cores.pitch_m") {
      d.layout.pitch = parse_double(where, value);
    } else if (key == "cores.current_a") {
      d.layout.current = parse_double(where, value);
    } else if (key == "cores.sequence") {
      d.layout.sequence = parse_sequence(where, value);
    } else if (key == "electrical.omega_rad_s") {
      d.layout.omega = parse_double(where, value);
    } else if (key == "armour.wire_count") {
      d.armour.wire_count = parse_int(where, value);
    } else if (key == "armour.wire_radius_m") {
      d.armour.wire_radius = parse_double(where, value);
    } else if (key == "armour.mean_radius_m") {
      d.armour.mean_radius = parse_double(where, value);
    } else if (key == "armour.pitch_m") {
      d.armour.pitch = parse_double(where, value);
    } else if (key == "armour.conductivity_s_m") {
      d.armour.conductivity = parse_double(where, value);
    } else if (key == "armour.mu_r") {
      d.armour.mu_r = parse_complex(where, value);
    } else if (key == "conductor.r_ac_ohm_m") {
      d.r_ac = parse_double(where, value);
    } else if (key == "solver.m_max") {
      d.solver.m_max = parse_int(where, value);
    } else if (key == "solver.transverse_order") {
      d.solver.transverse_order = parse_int(where, value);
    } else if (key == "solver.tail_tol") {
      d.solver.tail_tol = parse_double(where, value);
    } else if (key == "solver.coupling") {
      d.solver.coupling = parse_coupling(where, value);
    } else if (key == "solver.validity_factor") {
      d.solver.validity_factor = parse_double(where, value);
    } else {
      throw ValidationError(fmt::format("line {}: unknown key '{}'", ln, key));
    }
  }
  d.armour.omega = d.layout.omega;
  d.validate();
  return d;
}

CableDesign load_design(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw ValidationError(fmt::format("cannot open design file '{}'", path));
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_design(ss.str());
}

std::string serialize_design(const CableDesign& d) {
  std::string out;
  auto put = [&out](const char* key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("cores.helix_radius_m", fmt::format("{}", d.layout.helix_radius));
  put("cores.pitch_m", fmt::format("{}", d.layout.pitch));
  put("cores.current_a", fmt::format("{}", d.layout.current));
  put("cores.sequence", to_string(d.layout.sequence));
  put("electrical.omega_rad_s", fmt::format("{}", d.layout.omega));
  put("armour.wire_count", fmt::format("{}", d.armour.wire_count));
  put("armour.wire_radius_m", fmt::format("{}", d.armour.wire_radius));
  put("armour.mean_radius_m", fmt::format("{}", d.armour.mean_radius));
  put("armour.pitch_m", fmt::format("{}", d.armour.pitch));
  put("armour.conductivity_s_m", fmt::format("{}", d.armour.conductivity));
  put("armour.mu_r", fmt::format("{},{}", d.armour.mu_r.real(), d.armour.mu_r.imag()));
  if (d.r_ac) {
    put("conductor.r_ac_ohm_m", fmt::format("{}", *d.r_ac));
  }
  put("solver.m_max", fmt::format("{}", d.solver.m_max));
  put("solver.transverse_order", fmt::format("{}", d.solver.transverse_order));
  put("solver.tail_tol", fmt::format("{}", d.solver.tail_tol));
  put("solver.coupling", to_string(d.solver.coupling));
  put("solver.validity_factor", fmt::format("{}", d.solver.validity_factor));
  return out;
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "N") return SweepParameter::wire_count;
  if (name == "p_a") return SweepParameter::armour_pitch;
  if (name == "p_c") return SweepParameter::core_pitch;
  if (name == "mu_r") return SweepParameter::mu_r;
  if (name == "I_c") return SweepParameter::current;
  throw ValidationError(
      fmt::format("unknown sweep parameter '{}' (expected N, p_a, p_c, mu_r or I_c)", name));
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::wire_count: return "N";
    case SweepParameter::armour_pitch: return "p_a";
    case SweepParameter::core_pitch: return "p_c";
    case SweepParameter::mu_r: return "mu_r";
    case SweepParameter::current: return "I_c";
  }
  return "?";
}

std::vector<cplx> parse_sweep_values(SweepParameter p, const std::string& text) {
  std::vector<cplx> out;
  const std::string s = trim(text);
  if (p == SweepParameter::mu_r) {
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ';')) {
      out.push_back(parse_complex("sweep value", item));
    }
  } else if (s.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ':')) {
      parts.push_back(parse_double("sweep range", item));
    }
    if (parts.size() != 3 || !(parts[2] != 0.0) || (parts[1] - parts[0]) / parts[2] < 0.0) {
      throw ValidationError(fmt::format("bad sweep range '{}' (expected start:stop:step)", s));
    }
    const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    if (count > 100000) {
      throw ValidationError("sweep range has more than 100000 values");
    }
    for (long i = 0; i <= count; ++i) {
      out.emplace_back(parts[0] + static_cast<double>(i) * parts[2], 0.0);
    }
  } else {
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      out.emplace_back(parse_double("sweep value", item), 0.0);
    }
  }
  if (out.empty()) {
    throw ValidationError("sweep needs at least one value");
  }
  return out;
}

CableDesign apply_sweep_value(const CableDesign& design, SweepParameter p, cplx value) {
  CableDesign d = design;
  switch (p) {
    case SweepParameter::wire_count: {
      const double v = value.real();
      if (v != std::floor(v) || v < 1.0 || v > 1e6) {
        throw ValidationError(fmt::format("wire count {} is not a positive integer", v));
      }
      d.armour.wire_count = static_cast<int>(v);
      break;
    }
    case SweepParameter::armour_pitch: d.armour.pitch = value.real(); break;
    case SweepParameter::core_pitch: d.layout.pitch = value.real(); break;
    case SweepParameter::mu_r: d.armour.mu_r = value; break;
    case SweepParameter::current: d.layout.current = value.real(); break;
  }
  return d;
}

std::string to_string(CouplingModel model) {
  return model == CouplingModel::along_field ? "along_field" : "printed";
}

std::string to_string(PhaseSequence sequence) {
  return sequence == PhaseSequence::positive ? "positive" : "negative";
}

}  // namespace armour
