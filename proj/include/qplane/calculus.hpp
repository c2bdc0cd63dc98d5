#pragma once

#include <string_view>

#include "qplane/mode_function.hpp"

namespace qplane {

/// The four q-difference operators: right/left derivative in z and z̄.
enum class QDiff { RZ, LZ, RZBAR, LZBAR };

enum class Coord { Z, ZBAR };

std::string_view to_string(QDiff op);

/// f ↦ f(q^s · q^m z): dilation by q^m followed by s steps of the per-circle
/// analytic continuation. On modes: (shift f)_{k,l} = q^{l·s} f_{k+m,l}.
ModeFunction shift(const ModeFunction& f, int m, int s);

/// (σ_t f)(z) = f(q^{-it} z): rotates circle angles by -t·ln q.
ModeFunction sigma(const ModeFunction& f, double t);

/// σ_{i}: f ↦ f(q·z). Same as shift(f, 0, 1).
inline ModeFunction sigma_i(const ModeFunction& f) { return shift(f, 0, 1); }
/// σ_{-i}: same as shift(f, 0, -1).
inline ModeFunction sigma_minus_i(const ModeFunction& f) { return shift(f, 0, -1); }

/// Dilation θ: f ↦ f(qz), and its inverse.
inline ModeFunction dilate(const ModeFunction& f) { return shift(f, 1, 0); }
inline ModeFunction dilate_inverse(const ModeFunction& f) { return shift(f, -1, 0); }

/// Multiplication by z (Z) or by z̄ (ZBAR).
ModeFunction mult_coord(const ModeFunction& f, Coord which);

/// Division by z or z̄. Total, since the origin is never a lattice point.
ModeFunction div_coord(const ModeFunction& f, Coord which);

/// q-difference operator evaluated mode by mode from the action on g_{k,l}.
ModeFunction q_diff(const ModeFunction& f, QDiff which);

/// The same operator built from its difference quotient: a continuation shift,
/// a subtraction, and an exact division by z or z̄. Independent of q_diff.
ModeFunction q_diff_pointwise(const ModeFunction& f, QDiff which);

/// Closed set of operator symbols acting on mode functions.
class OperatorId {
 public:
  enum class Tag { RZ, LZ, RZBAR, LZBAR, Z, ZBAR, SIGMA, SHIFT };

  static OperatorId diff(QDiff op);
  static OperatorId coord(Coord c) { return OperatorId(c == Coord::Z ? Tag::Z : Tag::ZBAR); }
  static OperatorId sigma(double t) { OperatorId id(Tag::SIGMA); id.t_ = t; return id; }
  static OperatorId shift(int m, int s) { OperatorId id(Tag::SHIFT); id.m_ = m; id.s_ = s; return id; }

  Tag tag() const noexcept { return tag_; }
  double t() const noexcept { return t_; }
  int m() const noexcept { return m_; }
  int s() const noexcept { return s_; }

  ModeFunction operator()(const ModeFunction& f) const;

 private:
  explicit OperatorId(Tag tag) : tag_(tag) {}
  Tag tag_;
  double t_ = 0.0;
  int m_ = 0;
  int s_ = 0;
};

/// Claimed adjoint pairs ⟨f, A g⟩ = c·⟨B f, g⟩ in L²(Γ̄).
enum class AdjointPair {
  RZ_RZBAR,    // A = RZ,    B = RZBAR, c = -q²
  LZBAR_LZ,    // A = LZBAR, B = LZ,    c = -q²
};

/// ⟨f, A g⟩ − c·⟨B f, g⟩.
Complex adjoint_residual(AdjointPair pair, const ModeFunction& f, const ModeFunction& g);

}  // namespace qplane
