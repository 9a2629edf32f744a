#include "armour/tube_transform.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "armour/specialfn.hpp"

namespace armour {
namespace {

void check_finite(const char* what, double v) {
  if (!std::isfinite(v)) {
    throw ValidationError(fmt::format("armour {} must be finite", what));
  }
}

// (m)_n / n! = C(m + n - 1, n)
double rising_over_factorial(int m, int n) {
  double v = 1.0;
  for (int k = 0; k < n; ++k) {
    v *= static_cast<double>(m + k) / static_cast<double>(k + 1);
  }
  return v;
}

// f_mn d^(m+n); the spacing dependence is applied by the callers.
double coupling_numerator(int m, int n, CouplingModel model) {
  if ((m + n) % 2 != 0) {
    return 0.0;
  }
  double sign = 1.0;
  if (model == CouplingModel::along_field) {
    sign = ((m - n) / 2) % 2 == 0 ? 1.0 : -1.0;
  } else {
    sign = n % 2 == 0 ? 1.0 : -1.0;
  }
  return sign * 2.0 * rising_over_factorial(m, n) * specialfn::riemann_zeta(m + n);
}

void check_order(int M) {
  if (M < 1 || M > kMaxTransverseOrder) {
    throw DomainError(
        fmt::format("transverse order M must be in [1, {}] (got {})", kMaxTransverseOrder, M));
  }
}

// q_m / p_m written with the ratio I_{m+1}/I_m so that it stays finite when
// I_m(kappa r) underflows.
cplx q_over_p(const ArmourSpec& spec, int m) {
  const cplx x = spec.kappa() * spec.wire_radius;
  const cplx w = 1.0 + (x / static_cast<double>(m)) * specialfn::bessel_i_ratio(m, x);
  const cplx c = 1.0 / spec.mu_r;
  return (1.0 - c * w) / (1.0 + c * w);
}

struct Dimensionless {
  Eigen::VectorXcd u;  // D_m / (mu0 H_e r^(m+1))
  Eigen::MatrixXd G;   // r^(m+n) f_mn
};

Dimensionless solve(const ArmourSpec& spec, int M, CouplingModel model, double spacing) {
  check_order(M);
  if (!(spacing > 0.0)) {
    throw DomainError("wire spacing must be > 0");
  }
  const double ratio = spec.wire_radius / spacing;
  Dimensionless out;
  out.G.resize(M, M);
  for (int i = 0; i < M; ++i) {
    for (int j = 0; j < M; ++j) {
      const int m = i + 1;
      const int n = j + 1;
      out.G(i, j) = coupling_numerator(m, n, model) * std::pow(ratio, m + n);
    }
  }
  Eigen::VectorXcd rho(M);
  for (int i = 0; i < M; ++i) {
    rho(i) = q_over_p(spec, i + 1);
  }
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Identity(M, M);
  system -= rho.asDiagonal() * out.G.cast<cplx>();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(M);
  rhs(0) = rho(0);

  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw NumericalError(
        fmt::format("transverse system is singular (rcond = {:.3e}, M = {})", rcond, M));
  }
  out.u = lu.solve(rhs);
  if (!out.u.allFinite()) {
    throw NumericalError("transverse system produced non-finite coefficients");
  }
  return out;
}

}  // namespace

void ArmourSpec::validate() const {
  if (wire_count < 1) {
    throw ValidationError(fmt::format("armour wire count must be >= 1 (got {})", wire_count));
  }
  check_finite("wire radius", wire_radius);
  check_finite("mean radius", mean_radius);
  check_finite("pitch", pitch);
  check_finite("conductivity", conductivity);
  check_finite("omega", omega);
  if (!(wire_radius > 0.0)) {
    throw ValidationError("armour wire radius must be > 0");
  }
  if (!(mean_radius > 0.0)) {
    throw ValidationError("armour mean radius must be > 0");
  }
  if (pitch == 0.0) {
    throw ValidationError("armour pitch must be non-zero");
  }
  if (!(conductivity > 0.0)) {
    throw ValidationError("armour conductivity must be > 0");
  }
  if (!(omega > 0.0)) {
    throw ValidationError("omega must be > 0");
  }
  if (!std::isfinite(mu_r.real()) || !std::isfinite(mu_r.imag()) || mu_r.real() < 1.0 ||
      mu_r.imag() > 0.0) {
    throw ValidationError(fmt::format(
        "relative permeability must satisfy Re >= 1 and Im <= 0 (got {}{:+}j)", mu_r.real(),
        mu_r.imag()));
  }
  const double d = local_spacing(*this);
  if (!(d > 2.0 * wire_radius)) {
    throw ValidationError(fmt::format(
        "armour wires overlap: local spacing {:.6g} m <= wire diameter {:.6g} m", d,
        2.0 * wire_radius));
  }
}

cplx ArmourSpec::kappa() const { return std::sqrt(cplx{0.0, omega} * mu() * conductivity); }

double lay_factor(const ArmourSpec& spec) {
  const double a = 2.0 * kPi * spec.mean_radius / spec.pitch;
  return std::sqrt(1.0 + a * a);
}

double local_spacing(const ArmourSpec& spec) {
  return 2.0 * kPi * spec.mean_radius / (spec.wire_count * lay_factor(spec));
}

double equivalent_thickness(const ArmourSpec& spec) {
  const double r = spec.wire_radius;
  return spec.wire_count * r * r / (2.0 * spec.mean_radius) * lay_factor(spec);
}

double pitch_angle(const ArmourSpec& spec) {
  return std::atan(2.0 * kPi * spec.mean_radius / spec.pitch);
}

cplx mu_longitudinal(const ArmourSpec& spec) {
  const cplx x = spec.kappa() * spec.wire_radius;
  if (x == cplx{0.0, 0.0}) {
    return spec.mu();
  }
  return 2.0 * spec.mu() * specialfn::bessel_i(1, x) / (x * specialfn::bessel_i(0, x));
}

double coupling_coefficient(int m, int n, double spacing, CouplingModel model) {
  if (m < 1 || n < 1) {
    throw DomainError(fmt::format("coupling coefficient needs m, n >= 1 (got {}, {})", m, n));
  }
  if (!(spacing > 0.0)) {
    throw DomainError("wire spacing must be > 0");
  }
  return coupling_numerator(m, n, model) / std::pow(spacing, m + n);
}

PQ pq_coefficients(const ArmourSpec& spec, int m) {
  if (m < 1) {
    throw DomainError("p_m, q_m need m >= 1");
  }
  const cplx x = spec.kappa() * spec.wire_radius;
  const cplx im = specialfn::bessel_i(m, x);
  const cplx term = (x / (spec.mu_r * static_cast<double>(m))) * specialfn::bessel_i_prime(m, x);
  return {0.5 * (im + term), 0.5 * (im - term)};
}

TransverseCoefficient transverse_response_truncated(const ArmourSpec& spec, double H_e,
                                                    CouplingModel model) {
  const double r = spec.wire_radius;
  const PQ pq = pq_coefficients(spec, 1);
  const double f11 = coupling_coefficient(1, 1, local_spacing(spec), model);
  const cplx denom = pq.p - r * r * pq.q * f11;
  if (std::abs(denom) <= 1e-300) {
    throw NumericalError("singular one-unknown transverse denominator p_1 - r^2 q_1 f_11");
  }
  TransverseCoefficient out;
  out.A = kMu0 * H_e * r / denom;
  out.D = out.A * pq.q * r;
  return out;
}

std::vector<TransverseCoefficient> transverse_response_full(const ArmourSpec& spec, double H_e,
                                                            int M, CouplingModel model) {
  return transverse_response_full(spec, H_e, M, model, local_spacing(spec));
}

std::vector<TransverseCoefficient> transverse_response_full(const ArmourSpec& spec, double H_e,
                                                            int M, CouplingModel model,
                                                            double spacing) {
  const Dimensionless sol = solve(spec, M, model, spacing);
  const double r = spec.wire_radius;
  const Eigen::VectorXcd gu = sol.G.cast<cplx>() * sol.u;
  std::vector<TransverseCoefficient> out(static_cast<std::size_t>(M));
  double r_pow = r * r;  // r^(m+1)
  for (int i = 0; i < M; ++i) {
    const int m = i + 1;
    const PQ pq = pq_coefficients(spec, m);
    auto& c = out[static_cast<std::size_t>(i)];
    c.D = kMu0 * H_e * r_pow * sol.u(i);
    c.A = kMu0 * H_e * r * ((m == 1 ? 1.0 : 0.0) + gu(i)) / pq.p;
    r_pow *= r;
  }
  return out;
}

cplx mu_transverse(const ArmourSpec& spec, int M, CouplingModel model) {
  return mu_transverse(spec, M, model, local_spacing(spec));
}

cplx mu_transverse(const ArmourSpec& spec, int M, CouplingModel model, double spacing) {
  const Dimensionless sol = solve(spec, M, model, spacing);
  return kMu0 * (1.0 + 2.0 * sol.u(0));
}

ComplexPermeabilityTensor rotate_tensor(cplx mu_phi_prime, cplx mu_z_prime, double theta_a) {
  const double c = std::cos(theta_a);
  const double s = std::sin(theta_a);
  ComplexPermeabilityTensor t;
  t.rho_rho = kMu0;
  t.phi_phi = mu_phi_prime * c * c + mu_z_prime * s * s;
  t.z_z = mu_z_prime * c * c + mu_phi_prime * s * s;
  t.z_phi = c * s * (mu_z_prime - mu_phi_prime);
  return t;
}

TubeEquivalent geometry(const ArmourSpec& spec, const TransverseOptions& options) {
  spec.validate();
  TubeEquivalent out;
  out.d_a_local = local_spacing(spec);
  out.t = equivalent_thickness(spec);
  out.theta_a = pitch_angle(spec);
  out.mean_radius = spec.mean_radius;
  out.mu_z_prime = mu_longitudinal(spec);
  out.mu_phi_prime = mu_transverse(spec, options.order, options.coupling, out.d_a_local);
  out.tensor = rotate_tensor(out.mu_phi_prime, out.mu_z_prime, out.theta_a);
  return out;
}

}  // namespace armour
