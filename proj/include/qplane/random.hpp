#pragma once

#include <cstdint>
#include <random>

#include "qplane/mode_function.hpp"

namespace qplane {

/// Standard normal deviates from std::mt19937_64 via the Box-Muller transform
/// on u = (x >> 11)·2^-53. Fully specified, so a seed reproduces the same
/// stream on every platform.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // in [0, 1)
  double normal();
  /// (g1 + i g2)/√2: unit expected modulus squared.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Complex Gaussian coefficient on every mode of k_window × l_window.
ModeFunction random_mode_function(const QLattice& lattice, IndexWindow k_window, IndexWindow l_window,
                                  GaussianSource& rng);

}  // namespace qplane
