#include <gtest/gtest.h>

#include <cmath>

#include "qplane/forms.hpp"
#include "qplane/random.hpp"

using namespace qplane;

namespace {

const QLattice kLat(0.5);

ModeFunction random_f(std::uint64_t seed) {
  GaussianSource rng(seed);
  return random_mode_function(kLat, {-3, 3}, {-4, 4}, rng);
}

Form1 random_form(std::uint64_t seed) { return Form1(random_f(seed), random_f(seed + 1000)); }

double rel(const ModeFunction& a, const ModeFunction& b) {
  const double scale = std::max(a.max_abs(), b.max_abs());
  return scale == 0.0 ? 0.0 : max_abs_diff(a, b) / scale;
}

double rel(const Form1& a, const Form1& b) {
  const double scale = std::max(max_abs(a), max_abs(b));
  return scale == 0.0 ? 0.0 : max_abs_diff(a, b) / scale;
}

}  // namespace

TEST(D0, ZeroAndBasis) {
  const Form1 z = d0(ModeFunction(kLat));
  EXPECT_TRUE(z.alpha.empty() && z.beta.empty());

  const double q = 0.5, q2 = q * q;
  ModeFunction lz(kLat), lzbar(kLat);
  lz.add(0, -1, 1 / (1 - q2));
  lz.add(-1, -1, -q / (1 - q2));
  lzbar.add(1, 1, 1 / (1 / q2 - 1) / q);
  lzbar.add(0, 1, -1 / (1 / q2 - 1));
  const Form1 w = d0(basis(kLat, 0, 0));
  EXPECT_LT(rel(w.alpha, lz), 1e-15);
  EXPECT_LT(rel(w.beta, lzbar), 1e-15);
}

TEST(D0, Leibniz) {
  const ModeFunction f = random_f(1), g = random_f(2);
  EXPECT_LT(rel(d0(multiply(f, g)), right_mul(d0(f), g) + left_mul(f, d0(g))), 1e-12);
}

TEST(D0, MixedExpansionsAgree) {
  const ModeFunction f = random_f(3);
  for (int i = 0; i < 4; ++i) EXPECT_LT(rel(df_expansion(f, i), d0(f)), 1e-13) << i;
  EXPECT_THROW(df_expansion(f, 4), std::out_of_range);
}

TEST(D1, SquaresToZero) {
  for (std::uint64_t s : {4u, 5u, 6u}) {
    const ModeFunction f = random_f(s);
    const Form1 w = d0(f);
    const Form2 dd = d1(w);
    EXPECT_LE(dd.gamma.max_abs(), 1e-12 * std::max(q_diff(w.beta, QDiff::LZ).max_abs(), 1.0));
  }
}

TEST(D1, SingleComponentAndZero) {
  const ModeFunction f = random_f(7);
  EXPECT_LT(rel(d1(Form1(f, ModeFunction(kLat))).gamma, -1.0 * q_diff(f, QDiff::LZBAR)), 1e-15);
  EXPECT_TRUE(d1(Form1(kLat)).gamma.empty());
}

TEST(D1, GradedLeibniz) {
  const ModeFunction f = random_f(8);
  const Form1 w = random_form(9);
  const Form2 left = d1(left_mul(f, w));
  const Form2 left_want{wedge(d0(f), w).gamma + left_mul(f, d1(w)).gamma};
  EXPECT_LT(rel(left.gamma, left_want.gamma), 1e-12);
  const Form2 right = d1(right_mul(w, f));
  const Form2 right_want{right_mul(d1(w), f).gamma - wedge(w, d0(f)).gamma};
  EXPECT_LT(rel(right.gamma, right_want.gamma), 1e-12);
}

TEST(Commute, PastDz) {
  for (int k = -2; k <= 2; ++k)
    for (int l = -3; l <= 3; ++l) {
      EXPECT_LT(rel(commute_through(basis(kLat, k, l), Differential::DZ), kLat.pow(-l) * basis(kLat, k + 1, l)), 1e-15);
    }
  EXPECT_EQ(max_abs_diff(commute_through(basis(kLat, 2, 0), Differential::DZ), basis(kLat, 3, 0)), 0.0);
  const ModeFunction f = random_f(10);
  for (Differential d : {Differential::DZ, Differential::DZBAR}) {
    EXPECT_LT(rel(commute_back(commute_through(f, d), d), f), 1e-15);
    EXPECT_LT(rel(commute_through(commute_back(f, d), d), f), 1e-15);
  }
}

TEST(Commute, RightMultiplicationIsAssociative) {
  const ModeFunction f = random_f(11), g = random_f(12);
  const Form1 w = random_form(13);
  EXPECT_LT(rel(right_mul(right_mul(w, f), g), right_mul(w, multiply(f, g))), 1e-12);
  EXPECT_LT(rel(right_mul(left_mul(f, w), g), left_mul(f, right_mul(w, g))), 1e-12);
}

TEST(Star, IsAnInvolutionAndAntimultiplicative) {
  const Form1 w = random_form(14);
  EXPECT_LT(rel(star(star(w)), w), 1e-13);
  const ModeFunction f = random_f(15);
  EXPECT_LT(rel(star(left_mul(f, w)), right_mul(star(w), conjugate(f))), 1e-12);
}

TEST(OmegaFrame, Examples) {
  const auto [a0, b0] = to_omega_frame(Form1(kLat));
  EXPECT_TRUE(a0.empty() && b0.empty());
  const int k = 1;
  const ModeFunction zk = kLat.pow(k) * basis(kLat, k, 1);
  const auto [c, cb] = to_omega_frame(d0(zk));
  EXPECT_LT(rel(c, (0.25 - 1.0) * mult_coord(q_diff(zk, QDiff::LZ), Coord::Z)), 1e-15);
  const Form1 w = random_form(16);
  const auto [o, ob] = to_omega_frame(w);
  EXPECT_LT(rel(from_omega_frame(o, ob), w), 1e-14);
}
