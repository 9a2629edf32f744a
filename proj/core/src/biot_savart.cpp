#include <array>
#include <cmath>

#include <fmt/format.h>

#include "armour/exciting_field.hpp"

namespace armour {
namespace {

constexpr int kHalfPitches = 20;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                          0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights = {0.2369268850561891, 0.4786286704993665,
                                            0.5688888888888889, 0.4786286704993665,
                                            0.2369268850561891};

struct Filament {
  double angle;
  cplx current;
};

// Integrand of H_z for unit current at axial offset s = z' - z.
double kernel(const CoreLayout& layout, double x, double y, double z, double angle, double s) {
  const double a = layout.helix_radius;
  const double k = 2.0 * kPi / layout.pitch;
  const double zp = z + s;
  const double psi = angle + k * zp;
  const double c = std::cos(psi);
  const double sn = std::sin(psi);
  const double dlx = -a * sn * k;
  const double dly = a * c * k;
  const double rx = x - a * c;
  const double ry = y - a * sn;
  const double rz = -s;
  const double r2 = rx * rx + ry * ry + rz * rz;
  return (dlx * ry - dly * rx) / (r2 * std::sqrt(r2));
}

cplx integrate(const CoreLayout& layout, const std::array<Filament, 3>& filaments, double rho,
               double phi, double z, int segments_per_pitch) {
  const double x = rho * std::cos(phi);
  const double y = rho * std::sin(phi);
  const double period = std::abs(layout.pitch);
  const double length = kHalfPitches * period;
  const double h_max = period / segments_per_pitch;
  const double gap = std::abs(rho - layout.helix_radius);

  cplx total = 0.0;
  for (const auto& f : filaments) {
    double sum = 0.0;
    for (const double dir : {1.0, -1.0}) {
      // Panels grow with distance from the field point.
      double s = 0.0;
      while (s < length) {
        const double h = std::min({h_max, 0.01 * (gap + s), length - s});
        const double mid = s + 0.5 * h;
        double panel = 0.0;
        for (std::size_t i = 0; i < kNodes.size(); ++i) {
          panel += kWeights[i] * kernel(layout, x, y, z, f.angle, dir * (mid + 0.5 * h * kNodes[i]));
        }
        sum += 0.5 * h * panel;
        s += h;
      }
    }
    total += f.current * sum;
  }
  return total / (4.0 * kPi);
}

}  // namespace

BiotSavartResult biot_savart_oracle(const CoreLayout& layout, double rho, double phi, double z,
                                    int segments_per_pitch, double rel_tol) {
  layout.validate();
  if (segments_per_pitch < 1) {
    throw DomainError("segments_per_pitch must be >= 1");
  }
  if (!(rho >= 0.0) || std::abs(rho - layout.helix_radius) < 1e-9 * layout.helix_radius) {
    throw DomainError("Biot-Savart point lies on the helix cylinder");
  }
  const double s = layout.sequence == PhaseSequence::positive ? 1.0 : -1.0;
  std::array<Filament, 3> filaments{};
  for (int k = 0; k < 3; ++k) {
    const double angle = 2.0 * kPi * k / 3.0;
    filaments[static_cast<std::size_t>(k)] = {angle, std::polar(layout.current, -s * angle)};
  }

  BiotSavartResult out;
  out.coarse = integrate(layout, filaments, rho, phi, z, segments_per_pitch);
  out.value = integrate(layout, filaments, rho, phi, z, 2 * segments_per_pitch);
  const double scale = std::max(std::abs(out.value), 1e-300);
  out.rel_change = std::abs(out.value - out.coarse) / scale;
  out.converged = out.value == out.coarse || out.rel_change <= rel_tol;
  if (!out.converged) {
    throw NumericalError(fmt::format(
        "Biot-Savart integration not converged: relative change {:.3e} > {:.3e}", out.rel_change,
        rel_tol));
  }
  return out;
}

}  // namespace armour
