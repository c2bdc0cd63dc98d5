#include "qplane/qexp.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "dft.hpp"
#include "qplane/error.hpp"

namespace qplane {

FqEvaluator::FqEvaluator(QLattice lattice, double tol) : lattice_(lattice), tol_(tol) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw ConfigError("F_q tolerance must lie in (0, 1e-6]");
}

int FqEvaluator::truncation_index(double radius) const {
  if (radius == 0.0) return 0;
  const double q2 = lattice_.q() * lattice_.q();
  // smallest N with q^{2N} R ≤ min(1/2, tol (1 − q²) / 8)
  const double bound = std::min(0.5, tol_ * (1.0 - q2) / 8.0) / radius;
  if (bound >= 1.0) return 0;
  int n = static_cast<int>(std::ceil(std::log(bound) / (2.0 * lattice_.log_q())));
  n = std::max(n, 0);
  while (n > 0 && std::pow(q2, n - 1) <= bound) --n;
  while (std::pow(q2, n) > bound) ++n;
  return n;
}

Complex FqEvaluator::point(const CirclePoint& p) const {
  const int n_factors = truncation_index(lattice_.pow(p.k()));
  const double theta = p.theta();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Each factor conj(1+w)/(1+w) equals e^{-2i·arg(1+w)}; accumulate phases so the
  // product is unimodular to rounding.
  double phase = 0.0;
  for (int j = 0; j < n_factors; ++j) {
    const int e = p.k() + 2 * j;
    if (e == 0) {
      phase -= theta;  // along-circle value of the factor with |q^{2j} z| = 1
      continue;
    }
    const double r = lattice_.pow(e);
    phase -= 2.0 * std::atan2(r * s, 1.0 + r * c);
  }
  return std::polar(1.0, phase);
}

Complex FqEvaluator::extended(Complex u, Complex v) const {
  const int n_factors = truncation_index(std::max(std::abs(u), std::abs(v)));
  Complex prod = 1.0;
  for (int j = 0; j < n_factors; ++j) {
    const double w = lattice_.pow(2 * j);
    const Complex den = 1.0 + w * u;
    // u given in polar form cannot hit -q^{-2j} exactly (sin π ≠ 0 in floating
    // point), so a denominator at rounding level counts as the pole
    if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, w * std::abs(u)))
      throw PoleError("G(u, v) has a pole at u = -q^{-" + std::to_string(2 * j) + "}");
    prod *= (1.0 + w * v) / den;
  }
  return prod;
}

CircleCoefficients FqEvaluator::circle_coeffs(int n, IndexWindow l_window, int n_theta) const {
  if (l_window.empty()) throw ConfigError("angular window is empty");
  if (n_theta <= 0 || !std::has_single_bit(static_cast<unsigned>(n_theta)))
    throw ConfigError("n_theta must be a power of two, got " + std::to_string(n_theta));
  if (n_theta < 4 * l_window.size())
    throw AliasingError("n_theta = " + std::to_string(n_theta) + " is below 4x the angular window width " +
                        std::to_string(l_window.size()));
  std::vector<Complex> samples(static_cast<std::size_t>(n_theta));
  for (int j = 0; j < n_theta; ++j) samples[static_cast<std::size_t>(j)] = point(CirclePoint(n, kTwoPi * j / n_theta));
  std::vector<Complex> spectrum(samples.size());
  detail::dft(samples, spectrum, detail::DftSign::Plus);

  CircleCoefficients out;
  out.n = n;
  out.l_window = l_window;
  double energy = 0.0;
  for (auto& a : spectrum) {
    a /= static_cast<double>(n_theta);
    energy += std::norm(a);
  }
  out.parseval_defect = std::abs(energy - 1.0);
  out.a.reserve(static_cast<std::size_t>(l_window.size()));
  for (int l = l_window.lo; l <= l_window.hi; ++l) {
    const int idx = ((l % n_theta) + n_theta) % n_theta;
    out.a.push_back(spectrum[static_cast<std::size_t>(idx)]);
  }
  return out;
}

DiffIdentityReport FqEvaluator::diff_identity_residual(const CirclePoint& zeta,
                                                       std::span<const CirclePoint> zs) const {
  const double q2 = lattice_.q() * lattice_.q();
  const Complex zeta_v = zeta.value(lattice_);
  DiffIdentityReport report;
  for (const CirclePoint& z : zs) {
    const CirclePoint w = zeta * z;
    const Complex u = w.value(lattice_);
    const Complex v = std::conj(u);
    const Complex z_v = z.value(lattice_);
    try {
      const Complex f = point(w);
      // f(q·qz) for f = F_q(ζ·) continues the two arguments of G separately:
      // G(q²u, v). Likewise f(q·q^{-1}z) = G(u, q^{-2}v).
      const Complex f_qq = extended(q2 * u, v);
      const Complex f_qqinv = extended(u, v / q2);
      const Complex lhs_l = (f - f_qq) / ((1.0 - q2) * z_v);
      const Complex rhs_l = -zeta_v / (1.0 - q2) * f;
      const Complex lhs_lbar = (f_qqinv - f) / ((1.0 / q2 - 1.0) * std::conj(z_v));
      const Complex rhs_lbar = std::conj(zeta_v) / (1.0 - q2) * f;
      report.residual = std::max({report.residual, std::abs(lhs_l - rhs_l), std::abs(lhs_lbar - rhs_lbar)});
      ++report.evaluated;
    } catch (const PoleError&) {
      ++report.skipped_singular;
    }
  }
  return report;
}

}  // namespace qplane
