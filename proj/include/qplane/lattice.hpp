#pragma once

#include <complex>
#include <numbers>
#include <span>

namespace qplane {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Normalizes an angle to the half-open interval [0, 2π).
double normalize_angle(double theta);

/// The deformation parameter 0 < q < 1 together with the lattice it generates:
/// Γ = {z : |z| ∈ q^ℤ} and its closure Γ̄ = Γ ∪ {0}.
class QLattice {
 public:
  /// Throws ConfigError unless 0 < q < 1.
  explicit QLattice(double q);

  double q() const noexcept { return q_; }
  double log_q() const noexcept { return log_q_; }

  /// q^n for integer n.
  double pow(int n) const;

  /// Weight q^{2k} of the circle |z| = q^k in the covariant measure.
  double mu_weight(int k) const { return pow(2 * k); }

  friend bool operator==(const QLattice& a, const QLattice& b) noexcept {
    return a.q_ == b.q_;
  }

 private:
  double q_;
  double log_q_;
};

/// A point q^k·e^{iθ} of Γ. The origin is not representable; it is a limit point
/// that carries no measure.
class CirclePoint {
 public:
  CirclePoint(int k, double theta);

  int k() const noexcept { return k_; }
  double theta() const noexcept { return theta_; }

  Complex value(const QLattice& lattice) const;

  /// Group product in Γ: radial indices add, angles add modulo 2π.
  friend CirclePoint operator*(const CirclePoint& a, const CirclePoint& b) {
    return CirclePoint(a.k_ + b.k_, a.theta_ + b.theta_);
  }
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;

 private:
  int k_;
  double theta_;
};

/// Bicharacter of Γ in angle coordinates: e^{i(θ₁k₂ + θ₂k₁)}.
Complex chi(const CirclePoint& g1, const CirclePoint& g2);

/// Haar integral over Γ of per-circle angular samples: Σ_k (1/2π)∫ f dθ with
/// every circle weighted 1 and each angular mean taken as the uniform-sample
/// average (exact for band-limited integrands).
/// Throws NoDataError when no circle (or a circle without samples) is given.
Complex integrate_haar_gamma(std::span<const std::span<const Complex>> circles);

}  // namespace qplane
