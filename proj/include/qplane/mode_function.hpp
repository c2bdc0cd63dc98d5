#pragma once

#include <compare>
#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qplane/lattice.hpp"

namespace qplane {

/// Index of the basis function g_{k,l}: the phase e^{ilθ} on the circle
/// |z| = q^k, zero on every other circle.
struct Mode {
  int k = 0;
  int l = 0;
  friend auto operator<=>(const Mode&, const Mode&) = default;
};

/// Closed integer interval [lo, hi].
struct IndexWindow {
  int lo = 0;
  int hi = -1;

  bool empty() const noexcept { return hi < lo; }
  int size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(int i) const noexcept { return lo <= i && i <= hi; }
  friend bool operator==(const IndexWindow&, const IndexWindow&) = default;
};

/// A finite combination Σ c_{k,l} g_{k,l}. Exact zeros are never stored.
class ModeFunction {
 public:
  using Map = std::map<Mode, Complex>;

  explicit ModeFunction(QLattice lattice) : lattice_(lattice) {}

  const QLattice& lattice() const noexcept { return lattice_; }
  double q() const noexcept { return lattice_.q(); }

  const Map& coeffs() const noexcept { return coeffs_; }
  bool empty() const noexcept { return coeffs_.empty(); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  Complex coeff(int k, int l) const;
  Complex coeff(Mode m) const { return coeff(m.k, m.l); }

  /// Accumulates c into the (k,l) coefficient; a coefficient that cancels to
  /// exactly zero is erased.
  void add(int k, int l, Complex c);
  void set(int k, int l, Complex c);

  /// Radial support [min k, max k]; empty window for the zero function.
  IndexWindow k_support() const;
  /// Largest |l| present (0 for the zero function).
  int max_abs_l() const;
  /// Largest coefficient modulus.
  double max_abs() const;

  /// Point value Σ_l c_{k,l} e^{ilθ} at q^k e^{iθ}.
  Complex evaluate(const CirclePoint& p) const;

  /// Coefficients restricted to circles inside `window`.
  ModeFunction restricted(IndexWindow window) const;

  ModeFunction& operator+=(const ModeFunction& other);
  ModeFunction& operator-=(const ModeFunction& other);
  ModeFunction& operator*=(Complex s);

  friend ModeFunction operator+(ModeFunction a, const ModeFunction& b) { return a += b; }
  friend ModeFunction operator-(ModeFunction a, const ModeFunction& b) { return a -= b; }
  friend ModeFunction operator*(Complex s, ModeFunction a) { return a *= s; }
  friend ModeFunction operator*(ModeFunction a, Complex s) { return a *= s; }

 private:
  QLattice lattice_;
  Map coeffs_;
};

/// Values of a function on the grid (k, 2πj/n_theta), k in `window`.
class SampledFunction {
 public:
  SampledFunction(QLattice lattice, IndexWindow window, int n_theta);

  const QLattice& lattice() const noexcept { return lattice_; }
  IndexWindow window() const noexcept { return window_; }
  int n_theta() const noexcept { return n_theta_; }

  double theta(int j) const { return kTwoPi * j / n_theta_; }

  Complex& at(int k, int j);
  const Complex& at(int k, int j) const;

  /// Samples of circle k as a contiguous row.
  std::span<const Complex> circle(int k) const;
  std::span<Complex> circle(int k);

 private:
  QLattice lattice_;
  IndexWindow window_;
  int n_theta_;
  std::vector<Complex> values_;
};

ModeFunction basis(const QLattice& lattice, int k, int l);

/// Largest coefficient-wise distance between two functions on one lattice.
double max_abs_diff(const ModeFunction& a, const ModeFunction& b);

/// Throws AliasingError unless n_theta > 2·max|l| of f.
SampledFunction to_samples(const ModeFunction& f, IndexWindow window, int n_theta);

/// Per-circle discrete Fourier coefficients for |l| ≤ l_max.
/// Throws AliasingError unless n_theta > 2·l_max.
ModeFunction from_samples(const SampledFunction& s, int l_max);

/// Pointwise product: per-circle convolution in l.
ModeFunction multiply(const ModeFunction& f, const ModeFunction& g);

/// Complex conjugation of function values: (f*)_{k,l} = conj(f_{k,-l}).
ModeFunction conjugate(const ModeFunction& f);

/// ∫ f dμ = Σ_k q^{2k} f_{k,0}.
Complex integrate_mu(const ModeFunction& f);

/// Σ_k w_k f_{k,0} for caller-supplied circle weights (measure probes).
template <class WeightFn>
Complex integrate_weighted(const ModeFunction& f, WeightFn&& weight) {
  Complex sum = 0.0;
  for (const auto& [m, c] : f.coeffs())
    if (m.l == 0) sum += weight(m.k) * c;
  return sum;
}

/// L²(Γ̄, μ) inner product, conjugate-linear in the first argument.
Complex inner_product(const ModeFunction& f, const ModeFunction& g);

/// ‖f‖ in L²(Γ̄, μ).
double norm(const ModeFunction& f);

}  // namespace qplane
