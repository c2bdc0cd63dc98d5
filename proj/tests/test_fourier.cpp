#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qplane/error.hpp"
#include "qplane/fourier.hpp"
#include "qplane/random.hpp"

using namespace qplane;

namespace {

const QLattice kLat(0.5);

const FourierData& data16() {
  static const FourierData d = build_fourier_data(kLat, {-16, 16}, {-16, 16}, 256);
  return d;
}

ModeFunction random_f(std::uint64_t seed, IndexWindow kw = {-3, 3}, IndexWindow lw = {-4, 4}) {
  GaussianSource rng(seed);
  return random_mode_function(kLat, kw, lw, rng);
}

}  // namespace

TEST(Kernel, MatchesNaiveCoefficients) {
  const FourierData& d = data16();
  for (int n : {-5, 0, 2})
    for (int l : {-3, 0, 4}) EXPECT_LT(std::abs(d.a(n, l) - oracle::fq_circle_coeff(0.5, n, l, 256)), 1e-12) << n << "," << l;
  EXPECT_THROW(d.a(17, 0), WindowError);
  EXPECT_THROW(d.a(0, 17), WindowError);
  EXPECT_LT(d.max_parseval_defect(), 1e-10);
}

TEST(Kernel, ThreadCountDoesNotChangeResult) {
  const FourierData a = build_fourier_data(kLat, {-6, 6}, {-8, 8}, 128);
  setenv("QPLANE_THREADS", "1", 1);
  const FourierData b = build_fourier_data(kLat, {-6, 6}, {-8, 8}, 128);
  unsetenv("QPLANE_THREADS");
  for (int n = -6; n <= 6; ++n)
    for (int l = -8; l <= 8; ++l) EXPECT_EQ(a.a(n, l), b.a(n, l));
}

TEST(Kernel, DoublingNThetaIsStable) {
  const FourierData a = build_fourier_data(kLat, {-8, 8}, {-8, 8}, 128);
  const FourierData b = build_fourier_data(kLat, {-8, 8}, {-8, 8}, 256);
  for (int n = -8; n <= 8; ++n)
    for (int l = -8; l <= 8; ++l) EXPECT_LT(std::abs(a.a(n, l) - b.a(n, l)), 1e-10);
}

TEST(Transform, ZeroMapsToZero) {
  EXPECT_TRUE(fourier_apply(ModeFunction(kLat), data16()).value.empty());
  EXPECT_TRUE(fourier_adjoint_apply(ModeFunction(kLat), data16()).value.empty());
}

TEST(Transform, BasisCoefficientsFromKernel) {
  // ℱ g_{k,l} = q^{2k} Σ_m a_{m+k,l} g_{m,-l}
  const FourierData& d = data16();
  for (int k : {-2, 0, 3})
    for (int l : {-2, 0, 1}) {
      const TransformResult t = fourier_apply(basis(kLat, k, l), d);
      EXPECT_EQ(t.out_window, (IndexWindow{-16 - k, 16 - k}));
      for (const auto& [mode, c] : t.value.coeffs()) EXPECT_EQ(mode.l, -l);
      for (int m : {-3, 0, 4}) {
        const Complex want = std::pow(0.25, k) * oracle::fq_circle_coeff(0.5, m + k, l, 256);
        EXPECT_LT(std::abs(t.value.coeff(m, -l) - want), 1e-12 * std::pow(0.25, k)) << k << "," << l << "," << m;
      }
    }
}

TEST(Transform, AdjointIsSupportedOnNegatedMode) {
  const TransformResult t = fourier_adjoint_apply(basis(kLat, 1, 3), data16());
  EXPECT_FALSE(t.value.empty());
  for (const auto& [mode, c] : t.value.coeffs()) EXPECT_EQ(mode.l, -3);
}

TEST(Transform, Adjointness) {
  const ModeFunction f = random_f(1), h = random_f(2);
  const Complex a = inner_product(h, fourier_apply(f, data16()).value);
  const Complex b = inner_product(fourier_adjoint_apply(h, data16()).value, f);
  EXPECT_LT(std::abs(a - b), 1e-12 * std::abs(a));
}

TEST(Transform, PointValuesMatchDirectQuadrature) {
  const FourierData& d = data16();
  const FqEvaluator ev(kLat);
  const ModeFunction f = basis(kLat, 0, 0);
  const ModeFunction F = fourier_apply(f, d).value;
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> kd(-4, 4);
  std::uniform_real_distribution<double> td(0.0, qplane::kTwoPi);
  std::vector<CirclePoint> pts;
  for (int i = 0; i < 20; ++i) pts.emplace_back(kd(rng), td(rng));
  const auto direct = fourier_direct_quadrature(f, pts, 256, {0, 0}, ev);
  const auto fromF = evaluate_at(F, pts);
  // independent quadrature with the long double product
  std::vector<Complex> mine(pts.size());
  double scale = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (int j = 0; j < 256; ++j) mine[i] += oracle::fq_product(0.5, pts[i].value(kLat) * std::polar(1.0, qplane::kTwoPi * j / 256));
    mine[i] /= 256.0;
    scale = std::max(scale, std::abs(mine[i]));
  }
  EXPECT_LT(oracle::max_abs_diff(fromF, mine), 1e-8 * scale);
  EXPECT_LT(oracle::max_abs_diff(direct, mine), 1e-11 * scale);
}

TEST(Transform, DirectQuadratureIsLinearAndVanishesOnZero) {
  const FqEvaluator ev(kLat);
  const std::vector<CirclePoint> pts{{0, 0.3}, {2, 4.0}};
  const ModeFunction f = random_f(4, {-1, 1}, {-2, 2}), g = random_f(5, {-1, 1}, {-2, 2});
  const auto a = fourier_direct_quadrature(f, pts, 64, {-1, 1}, ev);
  const auto b = fourier_direct_quadrature(g, pts, 64, {-1, 1}, ev);
  const auto ab = fourier_direct_quadrature(f + Complex(2.0) * g, pts, 64, {-1, 1}, ev);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_LT(std::abs(ab[i] - a[i] - 2.0 * b[i]), 1e-12 * (std::abs(ab[i]) + 1));
  for (const Complex& z : fourier_direct_quadrature(ModeFunction(kLat), pts, 64, {-1, 1}, ev)) EXPECT_EQ(z, Complex(0.0));
}

TEST(Transform, ValueNearOriginIsIntegral) {
  const FqEvaluator ev(kLat);
  const ModeFunction f = random_f(6);
  const CirclePoint tiny(60, 0.4);
  const auto v = fourier_direct_quadrature(f, std::span<const CirclePoint>(&tiny, 1), 64, f.k_support(), ev);
  EXPECT_LT(std::abs(v[0] - integrate_mu(f)), 1e-8 * std::abs(integrate_mu(f)));
}

TEST(Transform, StrictWindowChecks) {
  const FourierData small = build_fourier_data(kLat, {-4, 4}, {-2, 2}, 64);
  EXPECT_THROW(fourier_apply(basis(kLat, 0, 3), small), WindowError);
  EXPECT_THROW(fourier_apply(basis(kLat, 0, 0), small, IndexWindow{-10, 10}), WindowError);
  EXPECT_NO_THROW(fourier_apply(basis(kLat, 0, 0), small, IndexWindow{-10, 10}, KernelPolicy::Truncate));
}

TEST(Transform, TailEstimateShrinksWithWindow) {
  const ModeFunction f = basis(kLat, 0, 0);
  const FourierData d8 = build_fourier_data(kLat, {-8, 8}, {-4, 4}, 64);
  const double t8 = fourier_apply(f, d8).tail_estimate;
  const double t16 = fourier_apply(f, data16()).tail_estimate;
  EXPECT_GT(t8, 0.0);
  EXPECT_LT(t16, t8);
}

TEST(Relations, LeftDerivativeOnBasis) {
  const RelationResidual r = relation_residual(Relation::LZ, basis(kLat, 0, 0), data16());
  EXPECT_LT(r.total(), 1e-3);
  EXPECT_LT(r.interior, 1e-10);
}

TEST(Relations, SigmaIsExactUpToTruncation) {
  for (int k = -2; k <= 2; ++k)
    for (int l = -3; l <= 3; ++l) EXPECT_LT(relation_residual(Relation::SIGMA, basis(kLat, k, l), data16()).interior, 1e-6);
}

TEST(Relations, ZeroFunction) {
  for (Relation r : kAllRelations) EXPECT_EQ(relation_residual(r, ModeFunction(kLat), data16()).total(), 0.0);
}

TEST(Relations, AllConvergeInTheWindow) {
  std::vector<double> prev(std::size(kAllRelations), 1e300);
  for (int w : {8, 12, 16}) {
    const FourierData d = build_fourier_data(kLat, {-w, w}, {-12, 12}, 256);
    for (std::size_t i = 0; i < std::size(kAllRelations); ++i) {
      double worst = 0;
      for (int k = -1; k <= 1; ++k)
        for (int l = -2; l <= 2; ++l) worst = std::max(worst, relation_residual(kAllRelations[i], basis(kLat, k, l), d).total());
      EXPECT_LT(worst, prev[i]) << to_string(kAllRelations[i]) << " w=" << w;
      prev[i] = worst;
    }
  }
  for (double p : prev) EXPECT_LT(p, 1e-3);
}

TEST(Relations, MismatchedLatticeIsRejected) {
  const RelationResidual ok = relation_residual(Relation::Z, basis(kLat, 0, 1), data16());
  EXPECT_LT(ok.total(), 1e-3);
  const FourierData d = build_fourier_data(QLattice(0.6), {-16, 16}, {-16, 16}, 256);
  EXPECT_THROW(relation_residual(Relation::Z, basis(kLat, 0, 1), d), ConfigError);
}

TEST(Plancherel, Eigenvalues) {
  const FourierData& d = data16();
  const PlancherelResidual p00 = plancherel_residual(0, 0, d);
  EXPECT_LT(p00.relative, 1e-3);
  EXPECT_LT(std::abs(p00.eigenvalue_ratio - 1.0), 1e-3);
  EXPECT_LT(plancherel_residual(0, 1, d).relative, 1e-3);
  for (int k = -2; k <= 2; ++k)
    for (int l = -3; l <= 3; ++l) {
      const PlancherelResidual p = plancherel_residual(k, l, d);
      EXPECT_LT(p.relative, 1e-3) << k << "," << l;
      EXPECT_LT(p.cross, 1e-3) << k << "," << l;
    }
}

TEST(Plancherel, ImprovesWithWindow) {
  double prev = 1e300;
  for (int w : {8, 12, 16}) {
    const FourierData d = build_fourier_data(kLat, {-w, w}, {-8, 8}, 128);
    const double r = plancherel_residual(0, 0, d).relative;
    EXPECT_LT(r, prev) << w;
    prev = r;
  }
}

TEST(Unitarity, GramDefect) {
  EXPECT_LT(unitarity_defect({-2, 2}, {-3, 3}, data16()), 1e-3);
  EXPECT_LT(unitarity_defect({0, 0}, {0, 0}, data16()), 1e-3);
  const FourierData d8 = build_fourier_data(kLat, {-8, 8}, {-16, 16}, 256);
  EXPECT_GT(unitarity_defect({-2, 2}, {-3, 3}, d8), unitarity_defect({-2, 2}, {-3, 3}, data16()));
}
