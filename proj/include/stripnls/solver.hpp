#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "stripnls/field.hpp"

namespace stripnls {

/// Full problem description for i u_t + u_xx + u_yy + lambda |u|^{p-2} u + g = 0
/// on the cell with Dirichlet traces h1 (y=0) and h2 (y=1).
struct Scenario {
  Grid grid;
  double lambda = 0.0;
  double p = 3.0;
  SpectralField phi;
  BoundaryData h1, h2;
  double T = 1.0;
  double window_dt = 0.1;
  int substeps = 16;            // time samples per Picard window
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  double s_monitor = 1.0;
  double compat_warn_tol = 1e-6;
  bool dealias = false;         // padded nonlinearity (even integer p only)
  std::function<complexd(double, double, double)> source;  // optional g(x,y,t)

  void validate() const;
};

struct WindowRecord {
  double t0 = 0.0, t1 = 0.0;
  int iterations = 0;
  double rho = 0.0;   // largest contraction ratio measured above the noise floor
  bool rho_valid = false;
};

struct SolveReport {
  std::vector<WindowRecord> windows;
  std::vector<double> t_series;
  std::vector<double> l2_series;
  std::vector<double> hs_series;      // H^{s_monitor}
  std::vector<double> l4_running;     // running L^4_{xyt} norm
  double r0 = 0.0, r1 = 0.0;          // compatibility residuals at t=0
  bool compat_warning = false;
  double mu = 0.0;                    // ||phi||_{H^s} + sum_j boundary norms
  double theta_r = 0.0;               // 1/r - 1/4 for the reported r
  double report_r = 4.0;
  bool blowup = false;
  double blowup_time = 0.0;
  int total_iterations = 0;
  double s_monitor = 1.0;
};

/// Pointwise lambda |u|^{p-2} u (0 at u = 0).  Requires p >= 3.
PhysicalField nonlinearity(const PhysicalField& u, double lambda, double p);

/// Anti-aliased evaluation on a grid zero-padded by factor p/2 in both
/// directions; requires even integer p >= 4.
PhysicalField nonlinearity_padded(const PhysicalField& u, double lambda, double p);

/// Compatibility residuals (r0, r1): L^2_x distance between the y->0 (y->1)
/// extrapolated trace of phi and h_j(., 0).
std::pair<double, double> check_compatibility(const Scenario& scn);

struct PicardResult {
  Trajectory traj;
  int iterations = 0;
  double rho = 0.0;
  bool rho_valid = false;
  bool converged = false;
};

/// One Picard window on [t0, t1] (t1 - t0 <= window_dt) starting from state u0
/// at t0.  Iterates u <- W0(.-t0) u0 + W_b[h, restarted at t0] + Phi_{t0, f(u)}
/// until the relative change in L^inf_t H^{s_monitor} drops below picard_tol.
/// An optional initial guess trajectory overrides the default (the affine part).
PicardResult picard_window(const Scenario& scn, double t0, double t1, const SpectralField& u0,
                           const Trajectory* initial_guess = nullptr);

/// Chains Picard windows over [0, T] with adaptive halving; returns the
/// accumulated trajectory and the run report.  Window-length underflow below
/// 1e-6*T is reported as presumed blow-up/stiffness, not thrown.
std::pair<Trajectory, SolveReport> march(const Scenario& scn);

/// First time at which the H^{s_monitor} series exceeds the threshold, or the
/// underflow time when the marcher flagged one; nullopt otherwise.
std::optional<double> detect_blowup(const SolveReport& report, double threshold);

}  // namespace stripnls
