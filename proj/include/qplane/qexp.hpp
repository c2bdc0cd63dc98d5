#pragma once

#include <vector>

#include "qplane/mode_function.hpp"

namespace qplane {

/// Angular Fourier coefficients a_{n,l} = (1/2π)∫ F_q(q^n e^{iu}) e^{ilu} du of
/// the quantum exponential on one circle.
struct CircleCoefficients {
  int n = 0;
  IndexWindow l_window;
  std::vector<Complex> a;  // a[l - l_window.lo]
  /// |Σ_l |a_l|² − 1| over all n_theta discrete coefficients.
  double parseval_defect = 0.0;

  Complex at(int l) const { return a.at(static_cast<std::size_t>(l - l_window.lo)); }
};

/// Result of a pointwise check of the F_q difference identities.
struct DiffIdentityReport {
  double residual = 0.0;   // max |LHS − RHS| over evaluated points
  int evaluated = 0;
  int skipped_singular = 0;
};

/// Evaluates F_q(z) = Π_{j≥0} (1 + q^{2j} z̄)/(1 + q^{2j} z) and the two-argument
/// product G(u, v) = Π_{j≥0} (1 + q^{2j} v)/(1 + q^{2j} u), F_q(z) = G(z, z̄).
///
/// Products are truncated at the first index N with q^{2N}R ≤ 1/2 and
/// 8·R·q^{2N}/(1 − q²) ≤ tol, R = max(|u|, |v|). Past that point every factor
/// obeys |factor − 1| ≤ 2q^{2j}R/(1 − q^{2j}R) ≤ 4q^{2j}R, so the tail's
/// multiplicative error is at most exp(s) − 1 ≤ 2s with
/// s = 4Rq^{2N}/(1 − q²) ≤ tol/2.
///
/// On the circles |z| = q^{-2j} the factor with |q^{2j}z| = 1 is replaced by its
/// along-circle value e^{-iθ} (the identity (1+e^{-iθ})/(1+e^{iθ}) = e^{-iθ},
/// extended to θ = π). F_q is then unimodular and smooth on every circle.
class FqEvaluator {
 public:
  /// Throws ConfigError unless 0 < tol ≤ 1e-6.
  explicit FqEvaluator(QLattice lattice, double tol = 1e-12);

  const QLattice& lattice() const noexcept { return lattice_; }
  double tol() const noexcept { return tol_; }

  /// Number of factors kept for an argument of modulus `radius`.
  int truncation_index(double radius) const;

  Complex point(const CirclePoint& p) const;

  /// Throws PoleError when 1 + q^{2j}u = 0 for some j ≥ 0.
  Complex extended(Complex u, Complex v) const;

  /// Samples F_q on circle n at n_theta uniform angles and returns the
  /// coefficients for l in l_window. n_theta must be a power of two with
  /// n_theta ≥ 4·|l_window|.
  CircleCoefficients circle_coeffs(int n, IndexWindow l_window, int n_theta) const;

  /// Checks ∂_L/∂z F_q(ζz) = −ζ/(1−q²) F_q(ζz) and
  /// ∂_L/∂z̄ F_q(ζz) = ζ̄/(1−q²) F_q(ζz) at the points z, with the difference
  /// quotients built from continued values of G. Points where a continued value
  /// sits on a pole are skipped and counted.
  DiffIdentityReport diff_identity_residual(const CirclePoint& zeta,
                                            std::span<const CirclePoint> zs) const;

 private:
  QLattice lattice_;
  double tol_;
};

}  // namespace qplane
