#include <cstdlib>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "armour/oracle.hpp"

namespace armour::oracle {
namespace {

namespace bmp = boost::multiprecision;

template <class R, class C>
struct Hp {
  static C from(cplx z) { return C(R(z.real()), R(z.imag())); }
  static cplx to(const C& c) {
    return {static_cast<double>(c.real()), static_cast<double>(c.imag())};
  }
  static R eps() { return std::numeric_limits<R>::epsilon(); }
  static R pi() { return boost::math::constants::pi<R>(); }
  static R mu0() { return R(4) * pi() / R(10000000); }

  static C bessel_i(int m, const C& z) {
    const C half = z / R(2);
    C term(1);
    for (int k = 1; k <= m; ++k) {
      term *= half / R(k);
    }
    const C q = half * half;
    C sum = term;
    for (int k = 1; k < 100000; ++k) {
      term *= q / (R(k) * R(k + m));
      sum += term;
      if (abs(term) <= eps() * abs(sum)) {
        break;
      }
    }
    return sum;
  }

  static C bessel_i_prime(int m, const C& z) {
    if (m == 0) {
      return bessel_i(1, z);
    }
    return (bessel_i(m - 1, z) + bessel_i(m + 1, z)) / R(2);
  }

  // K_n(z) = 1/2 (z/2)^-n sum_{k<n} (n-k-1)!/k! (-z^2/4)^k
  //        + (-1)^(n+1) ln(z/2) I_n(z)
  //        + (-1)^n 1/2 (z/2)^n sum_k [psi(k+1) + psi(n+k+1)] (z^2/4)^k / (k! (n+k)!)
  static C bessel_k(int n, const C& z) {
    const R gamma = boost::math::constants::euler<R>();
    const C half = z / R(2);
    const C q = half * half;
    const R sign = (n % 2 == 0) ? R(1) : R(-1);

    C finite(0);
    if (n > 0) {
      // (n-1)! at k = 0, then (n-k-1)!/k! (-q)^k by ratio.
      R fact(1);
      for (int j = 2; j < n; ++j) {
        fact *= R(j);
      }
      C term(fact);
      for (int k = 0; k < n; ++k) {
        finite += term;
        if (k + 1 < n) {
          term *= -q / (R(k + 1) * R(n - k - 1));
        }
      }
      C half_pow(1);
      for (int j = 0; j < n; ++j) {
        half_pow *= half;
      }
      finite = finite / (R(2) * half_pow);
    }

    const C log_part = -sign * log(half) * bessel_i(n, z);

    // psi(j) = -gamma + H_{j-1}
    R h_k(0);  // H_k
    R h_nk(0); // H_{n+k}
    for (int j = 1; j <= n; ++j) {
      h_nk += R(1) / R(j);
    }
    R inv_fact(1);  // 1 / (k! (n+k)!)
    for (int j = 2; j <= n; ++j) {
      inv_fact /= R(j);
    }
    C qk(1);
    C series(0);
    for (int k = 0; k < 100000; ++k) {
      const C term = (R(-2) * gamma + h_k + h_nk) * qk * inv_fact;
      series += term;
      if (k > 2 && abs(term) <= eps() * abs(series)) {
        break;
      }
      h_k += R(1) / R(k + 1);
      h_nk += R(1) / R(n + k + 1);
      inv_fact /= R(k + 1) * R(n + k + 1);
      qk *= q;
    }
    C half_pow(1);
    for (int j = 0; j < n; ++j) {
      half_pow *= half;
    }
    return finite + log_part + sign * half_pow * series / R(2);
  }

  static C kappa_r(const ArmourSpec& s) {
    const C mu = mu0() * from(s.mu_r);
    return sqrt(C(R(0), R(s.omega)) * mu * R(s.conductivity)) * R(s.wire_radius);
  }

  static C mu_longitudinal(const ArmourSpec& s) {
    const C x = kappa_r(s);
    return R(2) * mu0() * from(s.mu_r) * bessel_i(1, x) / (x * bessel_i(0, x));
  }

  static C pq(const ArmourSpec& s, int m, bool want_p) {
    const C x = kappa_r(s);
    const C t = x / (from(s.mu_r) * R(m)) * bessel_i_prime(m, x);
    const C im = bessel_i(m, x);
    return (want_p ? im + t : im - t) / R(2);
  }

  static C mu_transverse_m1(const ArmourSpec& s, CouplingModel model) {
    const R two_pi_r = R(2) * pi() * R(s.mean_radius);
    const R lay = sqrt(R(1) + (two_pi_r / R(s.pitch)) * (two_pi_r / R(s.pitch)));
    const R d = two_pi_r / (R(s.wire_count) * lay);
    const R zeta2 = pi() * pi() / R(6);
    R f11 = R(2) * zeta2 / (d * d);
    if (model == CouplingModel::printed) {
      f11 = -f11;
    }
    const C p = pq(s, 1, true);
    const C q = pq(s, 1, false);
    const R r(s.wire_radius);
    return mu0() * (R(1) + R(2) * q / (p - q * r * r * f11));
  }

  static C field_coefficient(const CoreLayout& l, int m) {
    // Selector from the explicit phasor sum over the three cores.
    const R sgn = l.sequence == PhaseSequence::positive ? R(1) : R(-1);
    C f(0);
    for (int k = 0; k < 3; ++k) {
      const R arg = -R(2) * pi() * R(k) * (R(m) + sgn) / R(3);
      f += C(cos(arg), sin(arg));
    }
    if (abs(f) < R(1e-30) || m == 0) {
      return C(0);
    }
    const int am = std::abs(m);
    const R x = R(2) * pi() * R(am) / abs(R(l.pitch)) * R(l.helix_radius);
    return -(R(l.current) / R(l.pitch)) * x * bessel_i_prime(am, C(x)) * f;
  }

  static C xi(int m, double eta, double R_) {
    const C x(R(eta) * R(R_));
    return C(1) / (R(R_) * bessel_i(m, x) * bessel_k(m, x));
  }
};

using Hp50 = Hp<bmp::cpp_bin_float_50, bmp::cpp_complex_50>;
using Hp100 = Hp<bmp::cpp_bin_float_100, bmp::cpp_complex_100>;

template <class F>
HpValue both(F&& f) {
  const auto hi = f(Hp100{});
  const auto lo = f(Hp50{});
  HpValue out;
  out.value = Hp100::to(hi);
  const auto lo_up = bmp::cpp_complex_100(static_cast<bmp::cpp_bin_float_100>(lo.real()),
                                          static_cast<bmp::cpp_bin_float_100>(lo.imag()));
  const auto scale = abs(hi);
  out.self_rel_diff =
      scale == 0 ? static_cast<double>(abs(lo_up)) : static_cast<double>(abs(hi - lo_up) / scale);
  return out;
}

}  // namespace

HpValue hp_bessel_i(int m, cplx z) {
  if (m < 0) {
    throw DomainError("hp_bessel_i: negative order");
  }
  return both([&](auto h) { return h.bessel_i(m, h.from(z)); });
}

HpValue hp_bessel_k(int m, cplx z) {
  if (m < 0 || !(z.real() > 0.0)) {
    throw DomainError("hp_bessel_k: needs m >= 0 and Re(z) > 0");
  }
  return both([&](auto h) { return h.bessel_k(m, h.from(z)); });
}

HpValue hp_mu_longitudinal(const ArmourSpec& spec) {
  return both([&](auto h) { return h.mu_longitudinal(spec); });
}

HpValue hp_p(const ArmourSpec& spec, int m) {
  return both([&](auto h) { return h.pq(spec, m, true); });
}

HpValue hp_q(const ArmourSpec& spec, int m) {
  return both([&](auto h) { return h.pq(spec, m, false); });
}

HpValue hp_mu_transverse_m1(const ArmourSpec& spec, CouplingModel model) {
  return both([&](auto h) { return h.mu_transverse_m1(spec, model); });
}

HpValue hp_field_coefficient(const CoreLayout& layout, int m) {
  return both([&](auto h) { return h.field_coefficient(layout, m); });
}

HpValue hp_xi(int m, double eta, double R) {
  return both([&](auto h) { return h.xi(m, eta, R); });
}

}  // namespace armour::oracle
