#include "stripnls/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stripnls {

namespace {

// Direct phase table e^{i pi xi_k x_i} for synthesis at FD columns.
std::vector<complexd> phase_table(const Grid& sg, const FdGrid& fg) {
  std::vector<complexd> E(std::size_t(sg.Nx) * fg.Mx);
  for (int k = 0; k < sg.Nx; ++k) {
    const double xik = sg.xi(k);
    for (int i = 0; i < fg.Mx; ++i)
      E[std::size_t(k) * fg.Mx + i] = std::exp(complexd(0.0, kPi * xik * fg.x(i)));
  }
  return E;
}

// h row at FD columns: h(x_i, t) = sum_k hhat_k(t) e^{i pi xi_k x_i}.
void boundary_row(const BoundaryData& h, const std::vector<complexd>& E, const FdGrid& fg,
                  double t, std::vector<complexd>& row) {
  const int Nx = h.grid.Nx;
  std::fill(row.begin(), row.end(), complexd(0.0, 0.0));
  if (h.xhat.empty()) return;
  for (int k = 0; k < Nx; ++k) {
    const complexd c = h.sample(k, t);
    if (c == complexd(0.0, 0.0)) continue;
    const complexd* Ek = &E[std::size_t(k) * fg.Mx];
    for (int i = 0; i < fg.Mx; ++i) row[i] += c * Ek[i];
  }
}

double abs_pow(const complexd& z, double q) {
  if (q == 1.0) return std::abs(z);
  if (q == 2.0) return std::norm(z);
  return std::pow(std::abs(z), q);
}

}  // namespace

void FdGrid::validate() const {
  if (!(Lx > 0.0)) throw std::invalid_argument("FdGrid: L_x must be positive");
  if (Mx < 4) throw std::invalid_argument("FdGrid: M_x must be >= 4");
  if (My < 3) throw std::invalid_argument("FdGrid: M_y must be >= 3");
  if (!(dt > 0.0)) throw std::invalid_argument("FdGrid: dt must be positive");
}

double fd_stable_dt(const FdGrid& g) {
  g.validate();
  const double ix = 1.0 / (g.dx() * g.dx());
  const double iy = 1.0 / (g.dy() * g.dy());
  // Inner loop contracts iff dt * ||L_h|| / 2 < 1 with ||L_h|| <= 4(ix + iy);
  // keep the ratio near 0.4.
  return 0.2 / (ix + iy);
}

FdField fd_initial_state(const Scenario& scn, const FdGrid& fg) {
  scn.validate();
  fg.validate();
  const Grid& sg = scn.grid;
  if (fg.Lx != sg.Lx) throw std::invalid_argument("fd_initial_state: cell length mismatch");
  FdField out(fg);
  const std::vector<complexd> E = phase_table(sg, fg);
  if (!scn.phi.c.empty()) {
    // Separable direct synthesis: S(k, j) = sum_n B(k,n) sin(n pi y_j).
    std::vector<complexd> S(std::size_t(sg.Nx) * fg.My, complexd(0.0, 0.0));
    for (int k = 0; k < sg.Nx; ++k)
      for (int j = 1; j + 1 < fg.My; ++j) {
        complexd acc(0.0, 0.0);
        for (int n = 1; n <= sg.Ny; ++n)
          acc += scn.phi.at(k, n) * std::sin(n * kPi * fg.y(j));
        S[std::size_t(k) * fg.My + j] = acc;
      }
    for (int i = 0; i < fg.Mx; ++i)
      for (int j = 1; j + 1 < fg.My; ++j) {
        complexd acc(0.0, 0.0);
        for (int k = 0; k < sg.Nx; ++k)
          acc += S[std::size_t(k) * fg.My + j] * E[std::size_t(k) * fg.Mx + i];
        out.at(i, j) = acc;
      }
  }
  std::vector<complexd> row(fg.Mx);
  boundary_row(scn.h1, E, fg, 0.0, row);
  for (int i = 0; i < fg.Mx; ++i) out.at(i, 0) = row[i];
  boundary_row(scn.h2, E, fg, 0.0, row);
  for (int i = 0; i < fg.Mx; ++i) out.at(i, fg.My - 1) = row[i];
  return out;
}

FdTrajectory cn_solve(const Scenario& scn, const FdGrid& fg, std::vector<double> out_times) {
  scn.validate();
  fg.validate();
  if (fg.Lx != scn.grid.Lx) throw std::invalid_argument("cn_solve: cell length mismatch");
  if (out_times.empty()) {
    out_times.resize(scn.substeps + 1);
    for (int m = 0; m <= scn.substeps; ++m) out_times[m] = scn.T * m / scn.substeps;
  }
  for (std::size_t m = 0; m < out_times.size(); ++m) {
    if (out_times[m] < 0.0 || out_times[m] > scn.T * (1.0 + 1e-12))
      throw std::invalid_argument("cn_solve: output time outside [0, T]");
    if (m > 0 && !(out_times[m] > out_times[m - 1]))
      throw std::invalid_argument("cn_solve: output times must increase");
  }

  const int Mx = fg.Mx, My = fg.My;
  const double ix = 1.0 / (fg.dx() * fg.dx());
  const double iy = 1.0 / (fg.dy() * fg.dy());
  const double q = scn.p - 2.0;
  const std::vector<complexd> E = phase_table(scn.grid, fg);

  FdField U = fd_initial_state(scn, fg);
  FdTrajectory out;
  double t = 0.0;
  if (out_times.front() <= 1e-15 * scn.T) {
    out.t.push_back(0.0);
    out.f.push_back(U);
  }

  FdField V(fg), W(fg), B(fg);
  std::vector<double> pn(std::size_t(Mx) * My, 0.0);
  std::vector<complexd> row0(Mx), row1(Mx), gmid;
  const bool has_source = bool(scn.source);
  if (has_source) gmid.resize(std::size_t(Mx) * My);

  auto lap = [&](const FdField& A, int i, int j) {
    const int ip = (i + 1 == Mx) ? 0 : i + 1;
    const int im = (i == 0) ? Mx - 1 : i - 1;
    return (A.at(ip, j) - 2.0 * A.at(i, j) + A.at(im, j)) * ix +
           (A.at(i, j + 1) - 2.0 * A.at(i, j) + A.at(i, j - 1)) * iy;
  };

  auto step = [&](double t0, double t1) {
    const double k = t1 - t0;
    const complexd ik(0.0, k);
    const complexd ik2(0.0, 0.5 * k);
    // Boundary rows at the new time level.
    boundary_row(scn.h1, E, fg, t1, row0);
    boundary_row(scn.h2, E, fg, t1, row1);
    if (has_source) {
      for (int i = 0; i < Mx; ++i)
        for (int j = 1; j + 1 < My; ++j)
          gmid[std::size_t(i) * My + j] =
              0.5 * (scn.source(fg.x(i), fg.y(j), t0) + scn.source(fg.x(i), fg.y(j), t1));
    }
    // Constant part B = U^n + (ik/2) L U^n + ik * gmid, and |U^n|^{p-2}.
    for (int i = 0; i < Mx; ++i) {
      for (int j = 1; j + 1 < My; ++j) {
        const std::size_t idx = std::size_t(i) * My + j;
        B.v[idx] = U.v[idx] + ik2 * lap(U, i, j);
        if (has_source) B.v[idx] += ik * gmid[idx];
        if (scn.lambda != 0.0) pn[idx] = abs_pow(U.v[idx], q);
      }
    }
    // Fixed-point iterate V -> W on the interior, boundary rows pinned at t1.
    V = U;
    for (int i = 0; i < Mx; ++i) {
      V.at(i, 0) = row0[i];
      V.at(i, My - 1) = row1[i];
      W.at(i, 0) = row0[i];
      W.at(i, My - 1) = row1[i];
    }
    for (int iter = 0;; ++iter) {
      if (iter >= 200)
        throw std::runtime_error("cn_solve: inner iteration did not converge; dt too large");
      double delta = 0.0, amax = 1.0;
      for (int i = 0; i < Mx; ++i) {
        for (int j = 1; j + 1 < My; ++j) {
          const std::size_t idx = std::size_t(i) * My + j;
          complexd val = B.v[idx] + ik2 * lap(V, i, j);
          if (scn.lambda != 0.0) {
            const complexd half = 0.5 * (V.v[idx] + U.v[idx]);
            const double rho = 0.5 * (abs_pow(V.v[idx], q) + pn[idx]);
            val += ik * (scn.lambda * rho) * half;
          }
          W.v[idx] = val;
          delta = std::max(delta, std::abs(val - V.v[idx]));
          amax = std::max(amax, std::abs(val));
        }
      }
      std::swap(V.v, W.v);
      // overflow makes delta <= 1e-12 * amax read inf <= inf; catch it here
      if (!std::isfinite(delta) || !std::isfinite(amax))
        throw std::runtime_error("cn_solve: inner iteration did not converge; dt too large");
      if (delta <= 1e-12 * amax) break;
    }
    U = V;
  };

  std::size_t next = out.t.empty() ? 0 : 1;
  for (; next < out_times.size(); ++next) {
    const double target = out_times[next];
    const double seg = target - t;
    const int nsteps = std::max(1, int(std::ceil(seg / fg.dt - 1e-9)));
    const double k = seg / nsteps;
    for (int s = 0; s < nsteps; ++s) step(t + s * k, (s + 1 == nsteps) ? target : t + (s + 1) * k);
    t = target;
    out.t.push_back(t);
    out.f.push_back(U);
  }
  return out;
}

std::vector<CompareRow> compare(const Trajectory& spec_traj, const FdTrajectory& fd_traj,
                                const std::vector<double>& times) {
  if (spec_traj.empty() || fd_traj.f.empty())
    throw std::invalid_argument("compare: empty trajectory");
  const Grid& sg = spec_traj.grid();
  const FdGrid& fg = fd_traj.f.front().grid;
  if (fg.Lx != sg.Lx) throw std::invalid_argument("compare: cell length mismatch");
  const std::vector<complexd> E = phase_table(sg, fg);

  auto find_index = [](const std::vector<double>& ts, double t, const char* who) {
    for (std::size_t m = 0; m < ts.size(); ++m)
      if (std::abs(ts[m] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return m;
    throw std::invalid_argument(std::string(who) + ": requested time not sampled");
  };

  std::vector<CompareRow> rows;
  rows.reserve(times.size());
  std::vector<complexd> S(std::size_t(sg.Nx));
  for (double t : times) {
    const SpectralField& F = spec_traj.f[find_index(spec_traj.t, t, "compare")];
    const FdField& G = fd_traj.f[find_index(fd_traj.t, t, "compare")];
    double sq = 0.0, mx = 0.0;
    for (int j = 1; j + 1 < fg.My; ++j) {
      const double yj = fg.y(j);
      for (int k = 0; k < sg.Nx; ++k) {
        complexd acc(0.0, 0.0);
        for (int n = 1; n <= sg.Ny; ++n) acc += F.at(k, n) * std::sin(n * kPi * yj);
        S[k] = acc;
      }
      for (int i = 0; i < fg.Mx; ++i) {
        complexd u(0.0, 0.0);
        for (int k = 0; k < sg.Nx; ++k) u += S[k] * E[std::size_t(k) * fg.Mx + i];
        const double d = std::abs(u - G.at(i, j));
        sq += d * d;
        mx = std::max(mx, d);
      }
    }
    rows.push_back({t, std::sqrt(fg.dx() * fg.dy() * sq), mx});
  }
  return rows;
}

double fd_mass(const FdField& u) {
  const FdGrid& g = u.grid;
  double sq = 0.0;
  for (int i = 0; i < g.Mx; ++i)
    for (int j = 1; j + 1 < g.My; ++j) sq += std::norm(u.at(i, j));
  return g.dx() * g.dy() * sq;
}

}  // namespace stripnls
