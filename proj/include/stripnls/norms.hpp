#pragma once

#include "stripnls/field.hpp"

namespace stripnls {

/// Bundle of norm parameters: Sobolev order s >= 0, Lebesgue exponent
/// r in [2,4] for the mixed-space norms, temporal order sigma >= 0.
struct NormRequest {
  double s = 0.0;
  double r = 2.0;
  double sigma = 0.0;
  void validate() const;
};

/// Discrete H^s norm: sqrt( (L_x/2) sum (1+xi_k^2+n^2)^s |c|^2 ).  s=0 is the
/// exact L^2 norm of the synthesis (Parseval).
double sobolev_norm(const SpectralField& F, double s);

/// Discrete L^2 of collocation values with cell weights dx*dy.
double l2_norm(const PhysicalField& f);

/// Discrete L^r norm ( sum |u|^r dx dy )^{1/r}; r = infinity gives max |u|.
double lr_norm(const PhysicalField& f, double r);

/// Multiplies coefficients by the Bessel weight (1+xi^2+n^2)^{s/2}.
SpectralField bessel_multiply(const SpectralField& F, double s);

/// W^{s,r} norm via the Bessel multiplier; accepts any r >= 1 (and infinity).
double lebesgue_sobolev_norm(const PhysicalField& f, double s, double r);

/// Public W^{s,r} norm with the contract guard 2 <= r <= 4.
double wsr_norm(const PhysicalField& f, double s, double r);

/// Time-spectral boundary norm surrogate: windowed t-DFT of hhat(xi_k, .)
/// weighted by (1+|lambda|+|xi|)(1+|lambda|+|xi|^2)^s, summed with dlambda,
/// where lambda is the pi^2-scaled time frequency (kernel e^{i pi^2 lambda t}).
/// Upper bound for the infimum-over-extensions norm on (0,T).
double boundary_norm(const BoundaryData& h, double s);

/// Bourgain-type norm of a windowed trajectory: space-time spectrum weighted by
/// (1+|xi|+n)^{2s} (1+|lambda+xi^2+n^2|)^{2sigma}, normalized so sigma=s=0
/// reproduces the windowed discrete space-time L^2 exactly.
double bourgain_norm(const Trajectory& traj, double sigma, double s, const WindowSpec& w);

/// ( sum_m trapezoid-weighted wsr_norm(u(t_m),s,r)^r dt )^{1/r}; r = infinity
/// takes the max over samples.  Requires a uniform time grid.
double lr_wsr_norm(const Trajectory& traj, double s, double r);

/// max_m sobolev_norm(u(t_m), s).
double linf_sobolev_norm(const Trajectory& traj, double s);

}  // namespace stripnls
