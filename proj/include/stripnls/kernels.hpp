#pragma once

#include <complex>
#include <span>

#include "stripnls/grid.hpp"

namespace stripnls::kernels {

/// Execution policy for the hot loops.  The OpenMP variants use a fixed chunk
/// decomposition and combine partial results in index order, so results are
/// bit-identical to the serial reference for any thread count.
enum class Exec { serial, openmp };

/// Process-wide default policy (openmp unless overridden).
Exec& exec_mode();

/// out[i] = phase[i] * in[i].
void phase_multiply(std::span<const complexd> in, std::span<const complexd> phase,
                    std::span<complexd> out, Exec ex);

/// out[i] = e^{-i omega[i] t} * in[i].
void phase_exp_multiply(std::span<const complexd> in, std::span<const double> omega, double t,
                        std::span<complexd> out, Exec ex);

/// out[i] = lambda * |u[i]|^{p-2} * u[i]  (0 at u[i] = 0; requires p >= 3).
void power_nonlinearity(std::span<const complexd> u, double lambda, double p,
                        std::span<complexd> out, Exec ex);

/// sum_i w[i] * |x[i]|^2 with deterministic chunked summation; w may be empty
/// (treated as all ones).
double weighted_sumsq(std::span<const complexd> x, std::span<const double> w, Exec ex);

/// sum_i |x[i]|^r with deterministic chunked summation.
double sum_abs_pow(std::span<const complexd> x, double r, Exec ex);

/// max_i |x[i]|.
double max_abs(std::span<const complexd> x, Exec ex);

/// Exponential product-integration sweep, parallel across modes.
///
/// For each mode index q and time level m:
///   I_0[q] = 0,
///   I_{m+1}[q] = decay[q] * I_m[q] + wl[q] * f_m[q] + wr[q] * f_{m+1}[q],
///   out_m[q] = pref[q] * I_m[q],
/// where frames[m] points at the m-th integrand slice (n_modes entries).
/// out_frames[m] may alias frames[m].
void exp_product_sweep(std::span<complexd* const> out_frames,
                       std::span<const complexd* const> in_frames, std::size_t n_modes,
                       std::span<const complexd> decay, std::span<const complexd> wl,
                       std::span<const complexd> wr, std::span<const complexd> pref, Exec ex);

}  // namespace stripnls::kernels
