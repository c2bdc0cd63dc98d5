#pragma once

#include <span>

#include "qplane/lattice.hpp"

namespace qplane::detail {

enum class DftSign { Minus, Plus };

/// out_l = Σ_j in_j e^{∓2πi jl/N} (unnormalized). Sizes must match.
/// Backed by FFTW; plans are cached per (size, sign).
void dft(std::span<const Complex> in, std::span<Complex> out, DftSign sign);

}  // namespace qplane::detail
