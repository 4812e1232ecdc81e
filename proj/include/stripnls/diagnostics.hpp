#pragma once

#include "stripnls/solver.hpp"

namespace stripnls {

/// Balance-law time series on a trajectory: conserved quantities, accumulated
/// boundary production integrals, identity residuals, and inequality margins,
/// together with the quadrature steps they were evaluated with.
struct BalanceReport {
  std::vector<double> t;
  std::vector<double> mass;             // ||u(t)||_{L2}^2
  std::vector<double> energy;           // ||u_x||^2 + ||u_y||^2 - (2 lambda/p)||u||_p^p
  std::vector<double> mass_flux;        // accumulated boundary flux
  std::vector<double> energy_work;      // accumulated boundary work
  std::vector<double> mass_residual;
  std::vector<double> energy_residual;
  std::vector<double> trace_margin;     // empty unless lambda < 0
  std::vector<double> h1_norm;          // ||u(t)||_{H^1}
  double dt = 0.0, dx = 0.0, dy = 0.0;
};

/// Mass identity residual per sample time:
///   r(t) = ||u(t)||^2 - ||u(0)||^2
///          - int_0^t [ 2 Im int u_y ubar dx |_{y=0} - 2 Im int u_y ubar dx |_{y=1} ] dtau,
/// with ubar traces extrapolated from heights fixed in physical units and u_y
/// traces by term-wise sine-series differentiation.  When both boundary data
/// are zero the flux is dropped and the residual is the plain mass drift.
std::vector<double> mass_balance(const Trajectory& traj, const BoundaryData& h1,
                                 const BoundaryData& h2);

/// Energy identity residual per sample time for
///   E(t) = ||u_x||^2 + ||u_y||^2 - (2 lambda / p) ||u||_{L^p}^p:
///   r(t) = E(t) - E(0)
///          - int_0^t [ 2 Re int (h2bar)_t u_y dx |_{y=1} - 2 Re int (h1bar)_t u_y dx |_{y=0} ] dtau,
/// with (h_j)_t by centered differences on the trajectory times.
std::vector<double> energy_balance(const Trajectory& traj, const Scenario& scn);

/// Per-time sides of the a-priori boundary-derivative bound; margin = rhs - lhs.
struct TraceTerms {
  std::vector<double> t;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margin;
};

/// Both sides of the a-priori boundary-derivative bound, where
///   LHS(t) = int_0^t int ( |u_y(x,1)|^2 + |u_y(x,0)|^2 ) dx dtau
/// and RHS collects the interior, data, and initial terms with fixed constants
/// (valid for lambda < 0; refuses otherwise).  All time integrals run over
/// [0, t] on the trajectory's samples.
TraceTerms trace_inequality_terms(const Trajectory& traj, const Scenario& scn);

/// Margin column of trace_inequality_terms.
std::vector<double> trace_inequality_margin(const Trajectory& traj, const Scenario& scn);

/// sup_t ||u(t)||_{H^1} next to the data norms that control it.
struct H1GrowthTable {
  double sup_h1 = 0.0;
  double t_at_sup = 0.0;
  double phi_h1 = 0.0;
  double h1_data_norm = 0.0;  // boundary_norm(h1, 1)
  double h2_data_norm = 0.0;
};
H1GrowthTable h1_growth_monitor(const Trajectory& traj, const Scenario& scn);

/// All monitors evaluated together on one trajectory.
BalanceReport balance_report(const Trajectory& traj, const Scenario& scn);

}  // namespace stripnls
