#include "qplane/lattice.hpp"

#include <cmath>
#include <string>

#include "qplane/error.hpp"

namespace qplane {

double normalize_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2π
  if (t >= kTwoPi) t = 0.0;
  return t;
}

QLattice::QLattice(double q) : q_(q), log_q_(0.0) {
  if (!(q > 0.0 && q < 1.0))
    throw ConfigError("q must satisfy 0 < q < 1, got " + std::to_string(q));
  log_q_ = std::log(q);
}

double QLattice::pow(int n) const { return std::pow(q_, n); }

CirclePoint::CirclePoint(int k, double theta) : k_(k), theta_(normalize_angle(theta)) {}

Complex CirclePoint::value(const QLattice& lattice) const {
  return std::polar(lattice.pow(k_), theta_);
}

Complex chi(const CirclePoint& g1, const CirclePoint& g2) {
  return std::polar(1.0, g1.theta() * g2.k() + g2.theta() * g1.k());
}

Complex integrate_haar_gamma(std::span<const std::span<const Complex>> circles) {
  if (circles.empty()) throw NoDataError("Haar integral over an empty radial window");
  Complex total = 0.0;
  for (const auto& samples : circles) {
    if (samples.empty()) throw NoDataError("Haar integral over a circle without samples");
    Complex sum = 0.0;
    for (const Complex& v : samples) sum += v;
    total += sum / static_cast<double>(samples.size());
  }
  return total;
}

}  // namespace qplane
