#pragma once

#include <utility>

#include "qplane/calculus.hpp"

namespace qplane {

/// α·dz + β·dz̄ with both coefficients written on the left.
struct Form1 {
  ModeFunction alpha;
  ModeFunction beta;

  explicit Form1(const QLattice& lattice) : alpha(lattice), beta(lattice) {}
  Form1(ModeFunction a, ModeFunction b);

  Form1& operator+=(const Form1& o);
  Form1& operator-=(const Form1& o);
  friend Form1 operator+(Form1 a, const Form1& b) { return a += b; }
  friend Form1 operator-(Form1 a, const Form1& b) { return a -= b; }
};

/// γ·dz∧dz̄. Since dz∧dz = dz̄∧dz̄ = 0 and dz̄∧dz = -dz∧dz̄, one
/// coefficient suffices.
struct Form2 {
  ModeFunction gamma;
};

enum class Differential { DZ, DZBAR };

/// Coefficient c′ with c·dz = dz·c′ (shift(c,-1,-1)) or c·dz̄ = dz̄·c′
/// (shift(c,1,-1)).
ModeFunction commute_through(const ModeFunction& c, Differential past);

/// Inverse of commute_through: c′ with dz·c = c′·dz, resp. dz̄·c = c′·dz̄.
ModeFunction commute_back(const ModeFunction& c, Differential past);

/// df = ∂_L f dz + ∂_L/∂z̄ f dz̄.
Form1 d0(const ModeFunction& f);

/// d(α dz + β dz̄) = (∂_L β − ∂_L/∂z̄ α) dz∧dz̄. Satisfies d1∘d0 = 0.
Form2 d1(const Form1& w);

/// Left and right module actions.
Form1 left_mul(const ModeFunction& f, const Form1& w);
Form1 right_mul(const Form1& w, const ModeFunction& f);
Form2 left_mul(const ModeFunction& f, const Form2& w);
Form2 right_mul(const Form2& w, const ModeFunction& f);

/// Wedge product Ω¹ × Ω¹ → Ω², moving coefficients left with the bimodule rules.
Form2 wedge(const Form1& a, const Form1& b);

/// Involution on Ω¹ extending f ↦ f̄ with dz* = dz̄ (equivalently ω* = ω̄).
Form1 star(const Form1& w);

/// Left coefficients in the frame (ω, ω̄), where dz = (q²−1) z ω and
/// dz̄ = (q²−1) ω̄ z̄.
std::pair<ModeFunction, ModeFunction> to_omega_frame(const Form1& w);
Form1 from_omega_frame(const ModeFunction& c_omega, const ModeFunction& c_omega_bar);

/// The four mixed-side expansions of df, each converted to left coefficients:
///   0: ∂_L f dz + dz̄ ∂_R/∂z̄ f     1: dz ∂_R f + dz̄ ∂_R/∂z̄ f
///   2: dz ∂_R f + ∂_L/∂z̄ f dz̄     3: ∂_L f dz + ∂_L/∂z̄ f dz̄
Form1 df_expansion(const ModeFunction& f, int which);

double max_abs_diff(const Form1& a, const Form1& b);
double max_abs(const Form1& w);

}  // namespace qplane
