#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "armour/oracle.hpp"
#include "armour/specialfn.hpp"
#include "armour/tube_transform.hpp"

using armour::ArmourSpec;
using armour::cplx;
using armour::CouplingModel;
using armour::kMu0;
using armour::kPi;

namespace {

ArmourSpec table_armour(double pitch = -100.0, cplx mu_r = {150.0, -50.0}, int N = 135) {
  ArmourSpec s;
  s.wire_count = N;
  s.wire_radius = 0.0025;
  s.mean_radius = 0.1156;
  s.pitch = pitch;
  s.conductivity = 5.3763e6;
  s.mu_r = mu_r;
  s.omega = 314.16;
  return s;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Geometry, TableArmourContraryLay) {
  // 30-digit hand evaluation.
  const auto s = table_armour(-2.4);
  EXPECT_NEAR(armour::local_spacing(s), 0.0051496054496647392, 1e-17);
  EXPECT_NEAR(armour::equivalent_thickness(s), 0.0038129045568363932, 1e-17);
  EXPECT_NEAR(armour::pitch_angle(s), -0.29387713407839571, 1e-15);
}

TEST(Geometry, TableArmourLongLay) {
  const auto s = table_armour(-100.0);
  EXPECT_NEAR(armour::local_spacing(s), 0.0053801263912204398, 1e-17);
  EXPECT_NEAR(armour::equivalent_thickness(s), 0.0036495339806472783, 1e-17);
  EXPECT_NEAR(armour::pitch_angle(s), -0.0072632344894542152, 1e-17);
}

TEST(Geometry, VolumeIdentity) {
  for (double pa : {-100.0, -4.0, -2.4, 2.4, 1e9}) {
    for (int N : {1, 25, 135}) {
      const auto s = table_armour(pa, {150.0, -50.0}, N);
      const double lhs = 2.0 * kPi * s.mean_radius * armour::equivalent_thickness(s);
      const double rhs = N * kPi * s.wire_radius * s.wire_radius * armour::lay_factor(s);
      EXPECT_NEAR(lhs, rhs, 4e-16 * rhs);
    }
  }
}

TEST(Geometry, OverlapRejected) {
  auto s = table_armour(-2.4, {150.0, -50.0}, 141);
  EXPECT_THROW(armour::geometry(s), armour::ValidationError);
  s.wire_count = 135;
  EXPECT_NO_THROW(armour::geometry(s));
}

TEST(ArmourSpec, Validation) {
  auto s = table_armour();
  s.mu_r = {0.5, 0.0};
  EXPECT_THROW(s.validate(), armour::ValidationError);
  s = table_armour();
  s.mu_r = {150.0, 10.0};
  EXPECT_THROW(s.validate(), armour::ValidationError);
  s = table_armour();
  s.pitch = 0.0;
  EXPECT_THROW(s.validate(), armour::ValidationError);
  s = table_armour();
  s.conductivity = -1.0;
  EXPECT_THROW(s.validate(), armour::ValidationError);
  s = table_armour();
  s.wire_count = 0;
  EXPECT_THROW(s.validate(), armour::ValidationError);
}

TEST(MuLongitudinal, TableWire) {
  const cplx ref(121.35674229155155619, -71.317150948821207787);
  EXPECT_LT(rel(armour::mu_longitudinal(table_armour()) / kMu0, ref), 1e-12);
}

TEST(MuLongitudinal, MatchesHighPrecision) {
  for (cplx mu_r : {cplx(150.0, -50.0), cplx(600.0, -350.0), cplx(1.0, 0.0)}) {
    const auto s = table_armour(-2.4, mu_r);
    const auto hp = armour::oracle::hp_mu_longitudinal(s);
    EXPECT_LT(rel(armour::mu_longitudinal(s), hp.value), 1e-12);
  }
}

TEST(MuLongitudinal, StaticLimit) {
  auto s = table_armour();
  s.conductivity = 0.0;
  EXPECT_LT(rel(armour::mu_longitudinal(s), s.mu()), 1e-15);
  s.conductivity = 1e-6;
  EXPECT_LT(rel(armour::mu_longitudinal(s), s.mu()), 1e-9);
  s.mu_r = 1.0;
  EXPECT_LT(rel(armour::mu_longitudinal(s), kMu0), 1e-9);
}

TEST(Coupling, Examples) {
  const double d = 0.01;
  EXPECT_EQ(armour::coupling_coefficient(1, 2, d), 0.0);
  EXPECT_EQ(armour::coupling_coefficient(1, 2, d, CouplingModel::printed), 0.0);
  EXPECT_NEAR(armour::coupling_coefficient(1, 1, d, CouplingModel::printed),
              -kPi * kPi / (3.0 * d * d), 1e-15 * kPi * kPi / (3.0 * d * d));
  EXPECT_NEAR(armour::coupling_coefficient(1, 1, d), kPi * kPi / (3.0 * d * d),
              1e-15 * kPi * kPi / (3.0 * d * d));
  // Matches the extrapolated lattice sum to 1e-9.
  const double f22 = 649393940.2266829;
  EXPECT_NEAR(armour::coupling_coefficient(2, 2, d), f22, 1e-13 * f22);
}

TEST(Coupling, ModelsDifferByParitySign) {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const double a = armour::coupling_coefficient(m, n, 0.007);
      const double p = armour::coupling_coefficient(m, n, 0.007, CouplingModel::printed);
      if ((m + n) % 2 != 0) {
        EXPECT_EQ(a, 0.0);
        EXPECT_EQ(p, 0.0);
      } else {
        const double sign = ((m + n) / 2) % 2 == 0 ? 1.0 : -1.0;
        EXPECT_NEAR(p, sign * a, 1e-14 * std::abs(a));
      }
    }
  }
}

TEST(Coupling, MagnitudeOfF11DecreasesWithSpacing) {
  double prev = std::abs(armour::coupling_coefficient(1, 1, 0.001));
  for (double d = 0.0011; d < 0.1; d *= 1.1) {
    const double cur = std::abs(armour::coupling_coefficient(1, 1, d));
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

TEST(PQ, TableWireFirstOrder) {
  const auto pq = armour::pq_coefficients(table_armour(), 1);
  EXPECT_LT(rel(pq.p, {0.25704601344022704, 0.3053472536612436}), 1e-12);
  EXPECT_LT(rel(pq.q, {0.25697482126958959, 0.29889851415463209}), 1e-12);
}

TEST(PQ, SumIsBesselI) {
  const auto s = table_armour(-2.4, {600.0, -350.0});
  for (int m = 1; m <= 10; ++m) {
    const auto pq = armour::pq_coefficients(s, m);
    const cplx im = armour::specialfn::bessel_i(m, s.kappa() * s.wire_radius);
    EXPECT_LT(rel(pq.p + pq.q, im), 1e-13) << m;
  }
}

TEST(PQ, MatchesHighPrecision) {
  const auto s = table_armour(-2.4, {600.0, -350.0});
  for (int m : {1, 2, 5, 17}) {
    const auto pq = armour::pq_coefficients(s, m);
    EXPECT_LT(rel(pq.p, armour::oracle::hp_p(s, m).value), 1e-12) << m;
    EXPECT_LT(rel(pq.q, armour::oracle::hp_q(s, m).value), 1e-12) << m;
  }
}

TEST(PQ, VacuumWireHasNoResponse) {
  // sigma -> 0 with mu_r = 1; validation requires sigma > 0.
  auto s = table_armour();
  s.mu_r = 1.0;
  s.conductivity = 1e-6;
  for (int m = 1; m <= 4; ++m) {
    const auto pq = armour::pq_coefficients(s, m);
    EXPECT_LT(std::abs(pq.q / pq.p), 1e-14) << m;
  }
  const double r = s.wire_radius;
  const auto t = armour::transverse_response_truncated(s, 1.0);
  EXPECT_LT(std::abs(t.D), 1e-14 * kMu0 * r * r);
  EXPECT_LT(rel(armour::mu_transverse(s, 1), kMu0), 1e-14);
  EXPECT_LT(rel(armour::mu_transverse(s, 17), kMu0), 1e-14);
}

TEST(Transverse, TruncatedIsLinearInField) {
  const auto s = table_armour();
  const auto a = armour::transverse_response_truncated(s, 1.0);
  const auto b = armour::transverse_response_truncated(s, 2.0);
  EXPECT_EQ(b.A, 2.0 * a.A);
  EXPECT_EQ(b.D, 2.0 * a.D);
}

TEST(Transverse, FullWithOneUnknownEqualsTruncated) {
  for (auto model : {CouplingModel::along_field, CouplingModel::printed}) {
    const auto s = table_armour(-2.4, {600.0, -350.0});
    const auto t = armour::transverse_response_truncated(s, 1.0, model);
    const auto f = armour::transverse_response_full(s, 1.0, 1, model);
    ASSERT_EQ(f.size(), 1U);
    EXPECT_LT(rel(f[0].D, t.D), 1e-14);
    EXPECT_LT(rel(f[0].A, t.A), 1e-14);
  }
}

TEST(Transverse, ResidualOfFullSystem) {
  const auto s = table_armour(-2.4, {600.0, -350.0});
  const double H = 1000.0;
  const double r = s.wire_radius;
  const double d = armour::local_spacing(s);
  for (int M : {3, 17, 40}) {
    const auto sol = armour::transverse_response_full(s, H, M);
    for (int m = 1; m <= M; ++m) {
      const auto pm = armour::pq_coefficients(s, m);
      cplx sum = 0.0;
      double scale = std::abs(pm.p * sol[m - 1].A);
      for (int n = 1; n <= M; ++n) {
        const auto pn = armour::pq_coefficients(s, n);
        const cplx term = std::pow(r, m + n) * armour::coupling_coefficient(m, n, d) * pn.q *
                          sol[n - 1].A;
        sum += term;
        scale = std::max(scale, std::abs(term));
      }
      const cplx rhs = m == 1 ? kMu0 * H * r : 0.0;
      const cplx res = pm.p * sol[m - 1].A - sum - rhs;
      EXPECT_LE(std::abs(res), 1e-12 * std::max(scale, std::abs(rhs))) << "M=" << M << " m=" << m;
      const cplx d_ref = pm.q * std::pow(r, m) * sol[m - 1].A;
      EXPECT_LE(std::abs(sol[m - 1].D - d_ref), 1e-14 * std::abs(d_ref));
    }
  }
}

TEST(Transverse, ConvergesInOrder) {
  const auto s = table_armour();
  double prev = INFINITY;
  for (int M = 5; M <= 24; ++M) {
    const cplx a = armour::transverse_response_full(s, 1.0, M).front().D;
    const cplx b = armour::transverse_response_full(s, 1.0, M + 4).front().D;
    const double diff = std::abs(a - b);
    EXPECT_LE(diff, prev) << M;
    prev = diff;
  }
}

TEST(Transverse, OrderLimits) {
  const auto s = table_armour();
  EXPECT_THROW(armour::transverse_response_full(s, 1.0, 0), armour::DomainError);
  EXPECT_THROW(armour::transverse_response_full(s, 1.0, 65), armour::DomainError);
}

TEST(MuTransverse, TableWireOneUnknown) {
  const cplx ref(7.61073629707164217, -0.23033727282221241782);
  EXPECT_LT(rel(armour::mu_transverse(table_armour(), 1) / kMu0, ref), 1e-12);
  const auto hp = armour::oracle::hp_mu_transverse_m1(table_armour(), CouplingModel::along_field);
  EXPECT_LT(rel(armour::mu_transverse(table_armour(), 1), hp.value), 1e-12);
}

TEST(MuTransverse, TruncationsAgreeAtWideSpacing) {
  const auto s = table_armour();
  const double d = armour::local_spacing(s);
  const cplx m1 = armour::mu_transverse(s, 1, CouplingModel::along_field, 20.0 * d);
  const cplx m17 = armour::mu_transverse(s, 17, CouplingModel::along_field, 20.0 * d);
  EXPECT_LT(rel(m1, m17), 1e-2);
  double prev = INFINITY;
  for (double k : {1.05, 1.2, 1.5, 2.0, 4.0, 8.0}) {
    const double spacing = k * 2.0 * s.wire_radius;
    const double gap = rel(armour::mu_transverse(s, 1, CouplingModel::along_field, spacing),
                           armour::mu_transverse(s, 17, CouplingModel::along_field, spacing));
    EXPECT_LT(gap, prev) << k;
    prev = gap;
  }
}

TEST(MuTransverse, RisesAtHighPacking) {
  const auto s = table_armour();
  cplx prev = armour::mu_transverse(s, 17, CouplingModel::along_field, 8.0 * s.wire_radius);
  for (double k : {3.0, 2.0, 1.5, 1.2, 1.05}) {
    const cplx cur = armour::mu_transverse(s, 17, CouplingModel::along_field, k * 2.0 * s.wire_radius);
    EXPECT_GT(cur.real(), prev.real()) << k;
    EXPECT_LT(cur.imag(), prev.imag()) << k;
    prev = cur;
  }
}

TEST(Passivity, RandomLossyWires) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ure(1.0, 1000.0);
  std::uniform_real_distribution<double> uim(-600.0, 0.0);
  std::uniform_real_distribution<double> ulogsig(4.0, 7.8);
  std::uniform_int_distribution<int> uN(1, 135);
  for (int i = 0; i < 100; ++i) {
    auto s = table_armour(-2.4, {ure(rng), uim(rng)}, uN(rng));
    s.conductivity = std::pow(10.0, ulogsig(rng));
    EXPECT_LE(armour::mu_longitudinal(s).imag(), 0.0);
    for (int M : {1, 17}) {
      for (auto model : {CouplingModel::along_field, CouplingModel::printed}) {
        EXPECT_LE(armour::mu_transverse(s, M, model).imag(), 0.0)
            << "mu_r=" << s.mu_r << " N=" << s.wire_count << " M=" << M;
      }
    }
  }
}

TEST(Tensor, ZeroAngleIsDiagonal) {
  const cplx mphi(3.0, -1.0);
  const cplx mz(100.0, -40.0);
  const auto t = armour::rotate_tensor(mphi, mz, 0.0);
  EXPECT_EQ(t.phi_phi, mphi);
  EXPECT_EQ(t.z_z, mz);
  EXPECT_EQ(t.z_phi, cplx(0.0));
  EXPECT_EQ(t.rho_rho, cplx(kMu0));
  auto s = table_armour(1e12);
  const auto g = armour::geometry(s);
  EXPECT_LT(std::abs(g.tensor.z_phi), 1e-12 * std::abs(g.tensor.z_z));
}

TEST(Tensor, RotationRecoversPrincipalValuesAndAngle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uth(-0.78, 0.78);
  std::uniform_real_distribution<double> u(1.0, 500.0);
  for (int i = 0; i < 200; ++i) {
    const cplx mphi(u(rng), -0.1 * u(rng));
    const cplx mz(u(rng), -0.5 * u(rng));
    const double th = uth(rng);
    const auto t = armour::rotate_tensor(mphi, mz, th);
    const cplx tr = t.phi_phi + t.z_z;
    const cplx det = t.phi_phi * t.z_z - t.z_phi * t.z_phi;
    const cplx disc = std::sqrt(tr * tr / 4.0 - det);
    cplx l1 = tr / 2.0 + disc;
    cplx l2 = tr / 2.0 - disc;
    if (std::abs(l1 - mz) > std::abs(l2 - mz)) std::swap(l1, l2);
    const double scale = std::abs(mz) + std::abs(mphi);
    EXPECT_LT(std::abs(l1 - mz), 1e-9 * scale);
    EXPECT_LT(std::abs(l2 - mphi), 1e-9 * scale);
    const cplx tan2 = 2.0 * t.z_phi / (t.z_z - t.phi_phi);
    EXPECT_LT(std::abs(tan2.imag()), 1e-12);
    EXPECT_NEAR(0.5 * std::atan(tan2.real()), th, 1e-12);
  }
}

TEST(Tensor, LayDirectionFlipsCrossTerm) {
  const auto a = armour::geometry(table_armour(-2.4));
  const auto b = armour::geometry(table_armour(2.4));
  EXPECT_EQ(a.tensor.z_phi, -b.tensor.z_phi);
  EXPECT_EQ(a.tensor.phi_phi, b.tensor.phi_phi);
  EXPECT_EQ(a.tensor.z_z, b.tensor.z_z);
}

TEST(Tensor, GeometryAssemblesFromComponents) {
  const auto s = table_armour(-2.4, {600.0, -350.0});
  const auto g = armour::geometry(s, {17, CouplingModel::along_field});
  EXPECT_EQ(g.mu_phi_prime, armour::mu_transverse(s, 17));
  EXPECT_EQ(g.mu_z_prime, armour::mu_longitudinal(s));
  const auto t = armour::rotate_tensor(g.mu_phi_prime, g.mu_z_prime, g.theta_a);
  EXPECT_EQ(g.tensor.phi_phi, t.phi_phi);
  EXPECT_EQ(g.tensor.z_phi, t.z_phi);
  EXPECT_EQ(g.t, armour::equivalent_thickness(s));
  EXPECT_EQ(g.d_a_local, armour::local_spacing(s));
}
