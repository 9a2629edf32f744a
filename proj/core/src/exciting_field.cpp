#include "armour/exciting_field.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "armour/specialfn.hpp"
#include "series_tail.hpp"

namespace armour {

void CoreLayout::validate() const {
  if (!(helix_radius > 0.0) || !std::isfinite(helix_radius)) {
    throw ValidationError(fmt::format("core helix radius must be > 0 (got {})", helix_radius));
  }
  if (pitch == 0.0 || !std::isfinite(pitch)) {
    throw ValidationError("core pitch must be finite and non-zero");
  }
  if (!(current >= 0.0) || !std::isfinite(current)) {
    throw ValidationError(fmt::format("core current must be >= 0 (got {})", current));
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError(fmt::format("omega must be > 0 (got {})", omega));
  }
}

int phase_selector(int m, PhaseSequence sequence) {
  // sum_k exp(j 2 pi k (m + s) / 3) over k = 0, 1, 2 with s = +-1.
  const int s = sequence == PhaseSequence::positive ? 1 : -1;
  const int r = ((m + s) % 3 + 3) % 3;
  return r == 0 ? 3 : 0;
}

HarmonicFieldCoefficient harmonic_coefficient(const CoreLayout& layout, int m, double rho) {
  layout.validate();
  if (!(rho > layout.helix_radius)) {
    throw DomainError(
        fmt::format("field evaluation needs rho > a_p (rho = {}, a_p = {})", rho,
                    layout.helix_radius));
  }
  HarmonicFieldCoefficient out;
  out.m = m;
  const int am = std::abs(m);
  out.eta = 2.0 * kPi * am / std::abs(layout.pitch);
  const int f = phase_selector(m, layout.sequence);
  if (m == 0 || f == 0 || layout.current == 0.0) {
    return out;
  }
  const double x = out.eta * layout.helix_radius;
  const cplx ip = specialfn::bessel_i_prime(am, x);
  out.E = -(layout.current / layout.pitch) * x * ip * static_cast<double>(f);
  out.H_at_rho = out.E * specialfn::bessel_k(am, out.eta * rho);
  return out;
}

std::vector<HarmonicFieldCoefficient> harmonic_series(const CoreLayout& layout, double rho,
                                                      int m_max) {
  if (m_max < 1 || m_max > kMaxFieldOrder) {
    throw DomainError(fmt::format("m_max must be in [1, {}] (got {})", kMaxFieldOrder, m_max));
  }
  std::vector<HarmonicFieldCoefficient> out;
  for (int am = 1; am <= m_max; ++am) {
    const int m = phase_selector(am, layout.sequence) != 0 ? am : -am;
    if (phase_selector(m, layout.sequence) == 0) {
      continue;
    }
    out.push_back(harmonic_coefficient(layout, m, rho));
  }
  return out;
}

FieldSample field_hz(const CoreLayout& layout, double rho, double phi, double z, int m_max) {
  const auto series = harmonic_series(layout, rho, m_max);
  FieldSample out;
  out.m_max = m_max;
  const double theta = phi - 2.0 * kPi * z / layout.pitch;
  double prev_mag = 0.0;
  int prev_order = 0;
  double last_mag = 0.0;
  int last_order = 0;
  for (const auto& c : series) {
    out.value += c.H_at_rho * std::polar(1.0, c.m * theta);
    prev_mag = last_mag;
    prev_order = last_order;
    last_mag = std::abs(c.H_at_rho);
    last_order = std::abs(c.m);
  }
  out.tail_bound = detail::geometric_tail(prev_mag, last_mag, last_order - prev_order);
  return out;
}

}  // namespace armour
