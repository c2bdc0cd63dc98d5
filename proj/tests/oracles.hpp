#pragma once

// Brute-force reference computations shared by the unit tests. Nothing here
// calls into the library beyond its data types.

#include <cmath>
#include <complex>
#include <vector>

#include "qplane/mode_function.hpp"

namespace oracle {

using qplane::Complex;
using CL = std::complex<long double>;

inline long double qpow(long double q, int n) { return std::pow(q, static_cast<long double>(n)); }

// f(q^s · q^m z) at z = q^k e^{iθ}: the circle k+m series with every phase
// e^{ilθ} continued to q^{ls} e^{ilθ}.
inline Complex continued_value(const qplane::ModeFunction& f, int k, double theta, int m, int s) {
  CL sum = 0;
  for (const auto& [mode, c] : f.coeffs()) {
    if (mode.k != k + m) continue;
    const long double amp = qpow(f.q(), mode.l * s);
    sum += CL(c.real(), c.imag()) * amp * std::polar(1.0L, static_cast<long double>(mode.l) * theta);
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

inline Complex point(double q, int k, double theta) {
  return std::polar(std::pow(q, k), theta);
}

// Σ_j x_j e^{sign·2πi jl/N}, O(N²).
inline std::vector<Complex> naive_dft(const std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t l = 0; l < n; ++l) {
    CL acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const long double ang = sign * 2.0L * 3.141592653589793238462643383279L * static_cast<long double>((j * l) % n) / n;
      acc += CL(x[j].real(), x[j].imag()) * std::polar(1.0L, ang);
    }
    out[l] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

// Π_{j<terms} (1 + q^{2j} v)/(1 + q^{2j} u) in long double.
inline Complex g_product(double q, Complex u, Complex v, int terms = 400) {
  CL prod = 1;
  long double w = 1;
  const CL U(u.real(), u.imag()), V(v.real(), v.imag());
  for (int j = 0; j < terms; ++j) {
    prod *= (1.0L + w * V) / (1.0L + w * U);
    w *= static_cast<long double>(q) * q;
  }
  return {static_cast<double>(prod.real()), static_cast<double>(prod.imag())};
}

inline Complex fq_product(double q, Complex z) { return g_product(q, z, std::conj(z)); }

// (1/N) Σ_j F_q(q^n e^{iu_j}) e^{ilu_j}.
inline Complex fq_circle_coeff(double q, int n, int l, int n_theta) {
  CL acc = 0;
  for (int j = 0; j < n_theta; ++j) {
    const double u = 2.0 * 3.141592653589793 * j / n_theta;
    const Complex v = fq_product(q, point(q, n, u)) * std::polar(1.0, l * u);
    acc += CL(v.real(), v.imag());
  }
  acc /= static_cast<long double>(n_theta);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace oracle
