#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qplane/calculus.hpp"
#include "qplane/qexp.hpp"

namespace qplane {

/// Per-circle coefficient table a_{n,l} of F_q. It realizes the transform
/// (ℱf)(ζ) = ∫ F_q(ζz) f(z) dμ(z) on modes:
///   (ℱf)_{m,j}  = Σ_k q^{2k} a_{m+k,-j} f_{k,-j}
///   (ℱ*h)_{n,j} = Σ_m q^{2m} conj(a_{m+n,j}) h_{m,-j}
class FourierData {
 public:
  /// Coefficients with modulus below this are FFT round-off and are stored as 0.
  static constexpr double kNoiseFloor = 1e-15;

  FourierData(QLattice lattice, IndexWindow n_window, IndexWindow l_window, int n_theta,
              std::vector<CircleCoefficients> circles);

  const QLattice& lattice() const noexcept { return lattice_; }
  IndexWindow n_window() const noexcept { return n_window_; }
  IndexWindow l_window() const noexcept { return l_window_; }
  int n_theta() const noexcept { return n_theta_; }

  bool has(int n, int l) const noexcept {
    return n_window_.contains(n) && l_window_.contains(l);
  }
  /// Throws WindowError outside the table.
  Complex a(int n, int l) const;

  /// Largest per-circle Parseval defect.
  double max_parseval_defect() const;
  const std::vector<CircleCoefficients>& circles() const noexcept { return circles_; }

 private:
  QLattice lattice_;
  IndexWindow n_window_;
  IndexWindow l_window_;
  int n_theta_;
  std::vector<CircleCoefficients> circles_;
};

/// Fills a_{n,l} for every n in n_window from fq_circle_coeffs. Circles are
/// computed in parallel; results do not depend on scheduling.
FourierData build_fourier_data(const QLattice& lattice, IndexWindow n_window,
                               IndexWindow l_window, int n_theta, double tol = 1e-12);

/// Missing kernel entries either raise WindowError (Strict) or drop the term
/// from the sum (Truncate, the truncated operator).
enum class KernelPolicy { Strict, Truncate };

struct TransformResult {
  ModeFunction value;
  IndexWindow out_window;
  /// Estimated L² mass beyond out_window (geometric extrapolation of the two
  /// outermost retained circles on each side).
  double tail_estimate = 0.0;
};

/// Largest output window for which every kernel entry needed by f exists:
/// n_window shifted by the radial support of f.
IndexWindow default_out_window(const ModeFunction& f, const FourierData& data);

TransformResult fourier_apply(const ModeFunction& f, const FourierData& data,
                              std::optional<IndexWindow> out_window = std::nullopt,
                              KernelPolicy policy = KernelPolicy::Strict);

TransformResult fourier_adjoint_apply(const ModeFunction& h, const FourierData& data,
                                      std::optional<IndexWindow> out_window = std::nullopt,
                                      KernelPolicy policy = KernelPolicy::Strict);

/// Brute-force oracle: Σ_k q^{2k} (1/n_theta) Σ_j F_q(ζ q^k e^{iθ_j}) f(q^k e^{iθ_j})
/// over circles k in radial_window, evaluated at every ζ in points.
std::vector<Complex> fourier_direct_quadrature(const ModeFunction& f,
                                               std::span<const CirclePoint> points,
                                               int n_theta, IndexWindow radial_window,
                                               const FqEvaluator& fq);

/// Point values of a mode function at the given points.
std::vector<Complex> evaluate_at(const ModeFunction& f, std::span<const CirclePoint> points);

/// Commutation relations between ℱ and the calculus, LHS(ℱf) = RHS-side ℱ(…):
///   Z      𝒵∘ℱ        = (q^{-2}−1) ℱ∘∂_R/∂z
///   ZBAR   𝒵*∘ℱ       = −(q²−q⁴) ℱ∘∂_R/∂z̄
///   LZ     ∂_L/∂z∘ℱ   = −(1−q²)^{-1} ℱ∘𝒵
///   LZBAR  ∂_L/∂z̄∘ℱ   = (1−q²)^{-1} ℱ∘𝒵*
///   RZ     ∂_R/∂z∘ℱ   = −q⁴(1−q²)^{-1} ℱ∘𝒵∘(σ_i∘θ)
///   RZBAR  ∂_R/∂z̄∘ℱ   = q^{-4}(1−q²)^{-1} ℱ∘𝒵*∘(σ_i∘θ^{-1})
///   DILATE_INV  (σ_{-i}∘θ^{-1})∘ℱ = q² ℱ∘(σ_i∘θ)
///   DILATE      (σ_{-i}∘θ)∘ℱ      = q^{-2} ℱ∘(σ_i∘θ^{-1})
///   SIGMA       σ_{-i}∘ℱ          = ℱ∘σ_i
enum class Relation { Z, ZBAR, LZ, LZBAR, RZ, RZBAR, DILATE_INV, DILATE, SIGMA };

inline constexpr Relation kAllRelations[] = {
    Relation::Z,  Relation::ZBAR,  Relation::LZ,         Relation::LZBAR, Relation::RZ,
    Relation::RZBAR, Relation::DILATE_INV, Relation::DILATE, Relation::SIGMA};

std::string_view to_string(Relation r);

struct RelationResidual {
  /// ‖LHS − RHS‖ / ‖RHS‖ on the comparison window.
  double interior = 0.0;
  /// (tail(LHS) + tail(RHS)) / ‖RHS‖: mass outside the comparison window that
  /// the finite computation cannot see.
  double tail = 0.0;
  IndexWindow window;

  /// Bound on the full-space relative residual.
  double total() const noexcept { return interior + tail; }
};

/// Evaluates both sides of a relation on f. The transform is taken on the
/// widest window the kernel supports; the comparison window drops the circles
/// whose LHS values would read outside it. Throws WindowError when that leaves
/// nothing to compare.
RelationResidual relation_residual(Relation id, const ModeFunction& f, const FourierData& data);

struct PlancherelResidual {
  /// ‖ℱ*ℱ g_{k,l} − q^{2−2l} g_{k,l}‖ / ‖q^{2−2l} g_{k,l}‖.
  double relative = 0.0;
  /// Largest |(ℱ*ℱ g)_{n,l}| for n ≠ k, in units of q^{2−2l−2k}.
  double cross = 0.0;
  /// Computed diagonal coefficient over q^{2−2l}.
  Complex eigenvalue_ratio = 1.0;
};

/// ℱ*ℱ g_{k,l} against q^{2−2l} g_{k,l}, using the truncated operators.
/// out_radius sets the circles n ∈ [k − r, k + r] that are compared.
PlancherelResidual plancherel_residual(int k, int l, const FourierData& data,
                                       int out_radius = 2);

/// max |⟨U g_a, U g_b⟩ − ⟨g_a, g_b⟩| / (q^{k_a} q^{k_b}) over basis pairs in
/// the test window, U = q^{-1} ℱ∘σ_i = q^{-1} σ_{-i}∘ℱ. With ℱ*ℱ = (qσ_{-i})²
/// this is the isometric factor of ℱ.
double unitarity_defect(IndexWindow k_window, IndexWindow l_window, const FourierData& data);

}  // namespace qplane
