#pragma once

#include <span>

#include "stripnls/field.hpp"

namespace stripnls {

/// Free-propagator phase table omega(k,n) = pi^2 (xi_k^2 + n^2); always >= pi^2.
struct Propagator {
  Grid grid;
  std::vector<double> omega;  // same (k, n-1) layout as SpectralField

  explicit Propagator(const Grid& g);
};

/// Mode-wise multiplication by e^{-i omega(k,n) t}; exact for any t (either sign).
SpectralField apply_W0(const SpectralField& phi, double t);

/// W0(t_m - times[0]) phi for each sample time.
Trajectory apply_W0_traj(const SpectralField& phi, const std::vector<double>& times);

/// Duhamel integral Phi(t_m) = i int_{t_0}^{t_m} e^{-i omega (t_m - tau)} fhat(tau) dtau
/// on the trajectory's uniform time grid, by exponential product integration
/// (exact when fhat is piecewise linear in tau).  Phi at the first sample is 0.
Trajectory duhamel(const Trajectory& f_traj);

/// Boundary operator: per mode (k,n),
///   c(k,n)(t) = 2 i n pi int_{t_0}^{t} e^{-i omega (t-tau)} (hhat1 - (-1)^n hhat2)(xi_k, tau) dtau,
/// the solution of the forced mode ODE i b_t = omega b + 2 n pi ((-1)^n hhat2 - hhat1)
/// with b(t_0) = 0, integrated with the same product-integration rule.
/// t_grid must be uniform; boundary data are sampled at the absolute times.
Trajectory apply_Wb(const BoundaryData& h1, const BoundaryData& h2,
                    const std::vector<double>& t_grid);

enum class Side { y0, y1 };

/// Near-boundary trace: sine synthesis evaluated at y = eps (Side::y0) or
/// y = 1 - eps (Side::y1), one x-row per sample time.
struct TraceSeries {
  std::vector<double> t;
  int Nx = 0;
  std::vector<complexd> values;  // index m*Nx + i

  complexd& at(int m, int i) { return values[std::size_t(m) * Nx + i]; }
  const complexd& at(int m, int i) const { return values[std::size_t(m) * Nx + i]; }
};

TraceSeries boundary_trace(const Trajectory& traj, Side side, double eps);

/// Trace estimate in the limit y -> 0 (or y -> 1): Lagrange extrapolation of
/// the synthesis from the six heights j*eps, j = 1..6.  eps <= 0 selects the
/// default eps = 1/(2(Ny+1)), half the interior spacing.
TraceSeries extrapolated_trace(const Trajectory& traj, Side side, double eps = 0.0);

/// x-Fourier coefficient row of the extrapolated trace of a single field.
std::vector<complexd> extrapolated_trace_coeffs(const SpectralField& F, Side side,
                                                double eps = 0.0);

/// x-Fourier coefficients of the sine synthesis evaluated at height y.
std::vector<complexd> sine_eval_coeffs(const SpectralField& F, double y);

/// Physical x-row of the sine synthesis at height y (inverse x-DFT of the above).
std::vector<complexd> sine_eval_row(const SpectralField& F, double y);

/// Physical x-row u(x_i) = sum_k c_k e^{i pi xi_k x_i} from a coefficient row.
std::vector<complexd> x_synthesis_row(const Grid& g, std::span<const complexd> coeffs);

}  // namespace stripnls
