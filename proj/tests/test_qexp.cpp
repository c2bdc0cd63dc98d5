#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qplane/error.hpp"
#include "qplane/qexp.hpp"

using namespace qplane;

namespace {

const QLattice kLat(0.5);

}  // namespace

TEST(Fq, RejectsBadTolerance) {
  EXPECT_THROW(FqEvaluator(kLat, 0.0), ConfigError);
  EXPECT_THROW(FqEvaluator(kLat, 1e-3), ConfigError);
}

TEST(Fq, PositiveRealAxisIsOne) {
  const FqEvaluator ev(kLat);
  for (int k = -30; k <= 30; ++k) EXPECT_EQ(ev.point({k, 0.0}), Complex(1.0)) << k;
}

TEST(Fq, MinusOneIsMinusOne) {
  const FqEvaluator ev(kLat);
  EXPECT_LT(std::abs(ev.point({0, std::numbers::pi}) - Complex(-1.0)), 1e-12);
}

TEST(Fq, MatchesLongDoubleProduct) {
  const FqEvaluator ev(kLat);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> kd(-12, 12);
  std::uniform_real_distribution<double> td(0.0, qplane::kTwoPi);
  for (int i = 0; i < 200; ++i) {
    const CirclePoint p(kd(rng), td(rng));
    if (p.k() <= 0 && p.k() % 2 == 0 && std::abs(p.theta() - std::numbers::pi) < 1e-3) continue;
    const Complex want = oracle::fq_product(0.5, p.value(kLat));
    EXPECT_LT(std::abs(ev.point(p) - want), 1e-11) << p.k() << " " << p.theta();
  }
}

TEST(Fq, UnimodularIncludingSingularCircles) {
  const FqEvaluator ev(kLat);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> kd(-20, 20);
  std::uniform_real_distribution<double> td(0.0, qplane::kTwoPi);
  for (int i = 0; i < 1000; ++i) EXPECT_NEAR(std::abs(ev.point({kd(rng), td(rng)})), 1.0, 1e-10);
  for (int k = -20; k <= 0; k += 2) {
    EXPECT_NEAR(std::abs(ev.point({k, std::numbers::pi})), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(ev.point({k, std::numbers::pi + 1e-9})), 1.0, 1e-10);
  }
}

TEST(Fq, SingularCircleIsContinuous) {
  const FqEvaluator ev(kLat);
  for (int k : {0, -2, -4}) {
    const Complex at = ev.point({k, std::numbers::pi});
    EXPECT_LT(std::abs(ev.point({k, std::numbers::pi + 1e-7}) - at), 1e-5) << k;
    EXPECT_LT(std::abs(ev.point({k, std::numbers::pi - 1e-7}) - at), 1e-5) << k;
  }
}

TEST(Extended, Examples) {
  const FqEvaluator ev(kLat);
  EXPECT_EQ(ev.extended(0.0, 0.0), Complex(1.0));
  EXPECT_THROW(ev.extended(-1.0, 0.3), PoleError);
  EXPECT_THROW(ev.extended(-16.0, 0.3), PoleError);
  EXPECT_NO_THROW(ev.extended(0.3, -1.0));
  const CirclePoint p(-3, 1.1);
  const Complex z = p.value(kLat);
  EXPECT_LT(std::abs(ev.extended(z, std::conj(z)) - ev.point(p)), 1e-12);
}

TEST(Extended, Telescoping) {
  const FqEvaluator ev(kLat);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const Complex u(ud(rng), ud(rng)), v(ud(rng), ud(rng));
    const Complex lhs = ev.extended(0.25 * u, 0.25 * v);
    const Complex rhs = ev.extended(u, v) * (1.0 + u) / (1.0 + v);
    EXPECT_LT(std::abs(lhs - rhs), 1e-11 * std::abs(rhs));
    const Complex direct = oracle::g_product(0.5, u, v);
    EXPECT_LT(std::abs(ev.extended(u, v) - direct), 1e-11 * std::abs(direct));
  }
}

TEST(Truncation, GrowsWithRadius) {
  const FqEvaluator ev(kLat);
  EXPECT_LE(ev.truncation_index(1e-3), ev.truncation_index(1.0));
  EXPECT_LT(ev.truncation_index(1.0), ev.truncation_index(1e6));
}

TEST(CircleCoeffs, MatchNaiveDft) {
  const FqEvaluator ev(kLat);
  for (int n : {-4, -1, 0, 3}) {
    const CircleCoefficients c = ev.circle_coeffs(n, {-6, 6}, 64);
    for (int l = -6; l <= 6; ++l) EXPECT_LT(std::abs(c.at(l) - oracle::fq_circle_coeff(0.5, n, l, 64)), 1e-11) << n << "," << l;
  }
}

TEST(CircleCoeffs, Parseval) {
  const FqEvaluator ev(kLat);
  for (int n = -16; n <= 16; ++n) EXPECT_LT(ev.circle_coeffs(n, {-20, 20}, 512).parseval_defect, 1e-10) << n;
}

TEST(CircleCoeffs, SmallCircleLimit) {
  const FqEvaluator ev(kLat);
  const CircleCoefficients c = ev.circle_coeffs(20, {-3, 3}, 64);
  EXPECT_LT(std::abs(c.at(0) - 1.0), 1e-8);
  const double z = std::pow(0.5, 20);
  for (int l : {-3, -2, -1, 1, 2, 3}) EXPECT_LE(std::abs(c.at(l)), 2 * z / (1 - 0.25));
}

TEST(CircleCoeffs, ConjugateSeries) {
  // coefficients of conj(F_q) with e^{-ilu} are conj(a_{n,l})
  const FqEvaluator ev(kLat);
  const int n = -2, N = 64;
  const CircleCoefficients c = ev.circle_coeffs(n, {-5, 5}, N);
  for (int l = -5; l <= 5; ++l) {
    Complex b = 0;
    for (int j = 0; j < N; ++j) {
      const double u = qplane::kTwoPi * j / N;
      b += std::conj(ev.point({n, u})) * std::polar(1.0, -l * u);
    }
    EXPECT_LT(std::abs(b / double(N) - std::conj(c.at(l))), 1e-13);
  }
}

TEST(CircleCoeffs, ArgumentChecks) {
  const FqEvaluator ev(kLat);
  EXPECT_THROW(ev.circle_coeffs(0, {-4, 4}, 48), ConfigError);
  EXPECT_THROW(ev.circle_coeffs(0, {-8, 8}, 32), AliasingError);
  EXPECT_THROW(ev.circle_coeffs(0, {1, 0}, 32), ConfigError);
}

TEST(DiffIdentity, RandomPoints) {
  const FqEvaluator ev(kLat);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> kd(-6, 6);
  std::uniform_real_distribution<double> td(0.0, qplane::kTwoPi);
  std::vector<CirclePoint> zs;
  for (int i = 0; i < 200; ++i) zs.emplace_back(kd(rng), td(rng));
  for (int i = 0; i < 5; ++i) {
    const DiffIdentityReport r = ev.diff_identity_residual({kd(rng), td(rng)}, zs);
    EXPECT_LE(r.residual, 1e-9);
    EXPECT_GT(r.evaluated, 150);
  }
}

TEST(DiffIdentity, RealAxis) {
  const FqEvaluator ev(kLat);
  const std::vector<CirclePoint> zs{{0, 0.0}, {1, 0.0}, {-1, 0.0}, {3, 0.0}};
  EXPECT_LE(ev.diff_identity_residual({2, 0.0}, zs).residual, 1e-10);
}

TEST(DiffIdentity, QuotientOracle) {
  // LZ of z ↦ F_q(ζz) from the long double product: [G(u,v) − G(q²u,v)]/((1−q²)z)
  const CirclePoint zeta(1, 0.8), zp(-1, 2.0);
  const Complex z = zp.value(kLat), u = zeta.value(kLat) * z, v = std::conj(u);
  const Complex lhs = (oracle::g_product(0.5, u, v) - oracle::g_product(0.5, 0.25 * u, v)) / (0.75 * z);
  const Complex rhs = -zeta.value(kLat) / 0.75 * oracle::fq_product(0.5, u);
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);
}
