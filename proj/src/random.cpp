#include "qplane/random.hpp"

#include <cmath>
#include <numbers>

namespace qplane {

double GaussianSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double GaussianSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

Complex GaussianSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

ModeFunction random_mode_function(const QLattice& lattice, IndexWindow k_window, IndexWindow l_window,
                                  GaussianSource& rng) {
  ModeFunction f(lattice);
  for (int k = k_window.lo; k <= k_window.hi; ++k)
    for (int l = l_window.lo; l <= l_window.hi; ++l) f.set(k, l, rng.complex_normal());
  return f;
}

}  // namespace qplane
