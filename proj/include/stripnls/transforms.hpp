#pragma once

#include <span>

#include "stripnls/field.hpp"

namespace stripnls {

/// (x-FFT) o (DST-I in y), normalized so inverse_transform(forward_transform(f)) = f.
/// A mode a * e^{i pi xi_k x} sin(n pi y) maps to coefficient a at (k, n).
SpectralField forward_transform(const PhysicalField& f);

/// Synthesis u(x_i, y_j) = sum_{k,n} c(k,n) e^{i pi xi_k x_i} sin(n pi y_j).
PhysicalField inverse_transform(const SpectralField& F);

/// Unnormalized forward DFT, out[m] = sum_j in[j] e^{-2 pi i m j / M}; used by
/// the time-spectral norms.  in and out must have equal length and not alias.
void dft_1d(std::span<const complexd> in, std::span<complexd> out);

}  // namespace stripnls
