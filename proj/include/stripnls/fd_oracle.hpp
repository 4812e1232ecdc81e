#pragma once

#include "stripnls/solver.hpp"

namespace stripnls {

/// Finite-difference lattice on the same cell: x periodic with Mx columns of
/// spacing Lx/Mx, y rows j = 0..My-1 of spacing 1/(My-1) including both
/// Dirichlet boundary rows.
struct FdGrid {
  double Lx = 16.0;
  int Mx = 64;
  int My = 33;
  double dt = 1e-4;

  void validate() const;
  double dx() const { return Lx / Mx; }
  double dy() const { return 1.0 / (My - 1); }
  double x(int i) const { return -0.5 * Lx + i * dx(); }
  double y(int j) const { return j * dy(); }
  bool operator==(const FdGrid&) const = default;
};

/// Largest time step for which the tridiagonal-free inner fixed-point
/// iteration of the Crank-Nicolson step contracts with ratio about 0.4.
double fd_stable_dt(const FdGrid& g);

/// Node values including boundary rows, row-major over (i, j).
struct FdField {
  FdGrid grid;
  std::vector<complexd> v;

  FdField() = default;
  explicit FdField(const FdGrid& g) : grid(g), v(std::size_t(g.Mx) * g.My) {}

  complexd& at(int i, int j) { return v[std::size_t(i) * grid.My + j]; }
  const complexd& at(int i, int j) const { return v[std::size_t(i) * grid.My + j]; }
};

struct FdTrajectory {
  std::vector<double> t;
  std::vector<FdField> f;
};

/// Scenario data evaluated at the FD nodes by direct basis summation (no fast
/// transforms); boundary rows carry the h samples at t = 0.
FdField fd_initial_state(const Scenario& scn, const FdGrid& g);

/// Crank-Nicolson walk of the scenario on the FD lattice, storing frames at
/// out_times (default: substeps+1 uniform samples of [0, T]).  Second-order
/// centered Laplacian, periodic in x, boundary rows imposed strongly at each
/// step; the nonlinear stage uses the conservative average
///   lambda * (|u^{n+1}|^{p-2} + |u^n|^{p-2})/2 * (u^{n+1} + u^n)/2,
/// so discrete mass is conserved exactly for real lambda and h = 0.  The inner
/// fixed-point loop (tol 1e-12) diverges when dt exceeds fd_stable_dt-scale
/// steps and then reports that dt is too large.
FdTrajectory cn_solve(const Scenario& scn, const FdGrid& g, std::vector<double> out_times = {});

struct CompareRow {
  double t = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Evaluates the spectral trajectory at the FD interior nodes and tabulates
/// L2/Linf differences at the requested times (which must be sampled by both
/// trajectories).  Boundary rows are excluded: they carry prescribed data on
/// the FD side and an identically vanishing sine synthesis on the other.
std::vector<CompareRow> compare(const Trajectory& spec_traj, const FdTrajectory& fd_traj,
                                const std::vector<double>& times);

/// Discrete interior mass sum |v|^2 dx dy.
double fd_mass(const FdField& u);

}  // namespace stripnls
