#include "stripnls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stripnls/kernels.hpp"
#include "stripnls/norms.hpp"
#include "stripnls/operators.hpp"
#include "stripnls/transforms.hpp"

namespace stripnls {

namespace {
using kernels::exec_mode;

bool even_integer(double p) {
  const double ip = std::round(p);
  return std::abs(p - ip) < 1e-12 && (long(ip) % 2 == 0);
}

SpectralField effective_phi(const Scenario& scn) {
  return scn.phi.c.empty() ? SpectralField(scn.grid) : scn.phi;
}

// Zero stand-in for an absent trace, sampled like the present one so the two
// share apply_Wb's time grid.
BoundaryData effective_h(const Scenario& scn, const BoundaryData& h, const BoundaryData& other) {
  if (!h.xhat.empty()) return h;
  BoundaryData z(scn.grid, other.xhat.empty() ? scn.T : other.T,
                 other.xhat.empty() ? 2 : other.M);
  z.window.kind = WindowSpec::Kind::none;
  return z;
}

double max_frame_norm(const Trajectory& u, double s) {
  double m = 0.0;
  for (const SpectralField& F : u.f) m = std::max(m, sobolev_norm(F, s));
  return m;
}
}  // namespace

void Scenario::validate() const {
  grid.validate();
  if (!(p >= 3.0)) throw std::invalid_argument("Scenario: p must be >= 3");
  if (!(T > 0.0)) throw std::invalid_argument("Scenario: T must be positive");
  if (!(window_dt > 0.0)) throw std::invalid_argument("Scenario: window_dt must be positive");
  if (substeps < 2) throw std::invalid_argument("Scenario: substeps must be >= 2");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("Scenario: picard_tol must be positive");
  if (picard_max_iter < 1) throw std::invalid_argument("Scenario: picard_max_iter must be >= 1");
  if (!(s_monitor >= 0.0)) throw std::invalid_argument("Scenario: s_monitor must be >= 0");
  if (!phi.c.empty() && !(phi.grid == grid))
    throw std::invalid_argument("Scenario: phi grid mismatch");
  auto check_h = [&](const BoundaryData& h, const char* name) {
    if (h.xhat.empty()) return;
    if (!(h.grid == grid))
      throw std::invalid_argument(std::string("Scenario: ") + name + " grid mismatch");
    if (h.T < T * (1.0 - 1e-12))
      throw std::invalid_argument(std::string("Scenario: ") + name + " must cover [0, T]");
    if (h.M < 2)
      throw std::invalid_argument(std::string("Scenario: ") + name +
                                  " needs at least 3 time samples");
  };
  check_h(h1, "h1");
  check_h(h2, "h2");
  if (dealias && !(even_integer(p) && p >= 4.0))
    throw std::invalid_argument("Scenario: dealias requires even integer p >= 4");
}

PhysicalField nonlinearity(const PhysicalField& u, double lambda, double p) {
  if (!(p >= 3.0)) throw std::invalid_argument("nonlinearity: p must be >= 3");
  PhysicalField out(u.grid);
  kernels::power_nonlinearity(u.v, lambda, p, out.v, exec_mode());
  return out;
}

PhysicalField nonlinearity_padded(const PhysicalField& u, double lambda, double p) {
  if (!(even_integer(p) && p >= 4.0))
    throw std::invalid_argument("nonlinearity_padded: requires even integer p >= 4");
  const Grid& g = u.grid;
  const int q = int(std::lround(p)) / 2;  // padding factor p/2 blocks all fold-over
  Grid gp{g.Lx, q * g.Nx, q * (g.Ny + 1) - 1};
  gp.validate();

  const SpectralField F = forward_transform(u);
  SpectralField Fp(gp);
  auto padded_k = [&](int k) {
    const int m = g.signed_mode(k);
    return m >= 0 ? m : m + gp.Nx;
  };
  for (int k = 0; k < g.Nx; ++k) {
    const int kp = padded_k(k);
    for (int n = 1; n <= g.Ny; ++n) Fp.at(kp, n) = F.at(k, n);
  }
  const PhysicalField up = inverse_transform(Fp);
  PhysicalField fp(gp);
  kernels::power_nonlinearity(up.v, lambda, p, fp.v, exec_mode());
  const SpectralField Gp = forward_transform(fp);
  SpectralField G(g);
  for (int k = 0; k < g.Nx; ++k) {
    const int kp = padded_k(k);
    for (int n = 1; n <= g.Ny; ++n) G.at(k, n) = Gp.at(kp, n);
  }
  return inverse_transform(G);
}

std::pair<double, double> check_compatibility(const Scenario& scn) {
  scn.validate();
  const Grid& g = scn.grid;
  Trajectory tr;
  tr.t = {0.0};
  tr.f = {effective_phi(scn)};
  // Tight extrapolation nodes: smooth data keep the node-spacing error far
  // below the warning threshold without sacrificing the boundary limit.
  const double eps = 0.05 / (g.Ny + 1);
  auto dist = [&](Side side, const BoundaryData& h) {
    const TraceSeries ts = extrapolated_trace(tr, side, eps);
    std::vector<complexd> hrow(g.Nx, complexd(0.0, 0.0));
    if (!h.xhat.empty()) {
      std::vector<complexd> coeff(g.Nx);
      for (int k = 0; k < g.Nx; ++k) coeff[k] = h.sample(k, 0.0);
      hrow = x_synthesis_row(g, coeff);
    }
    double sq = 0.0;
    for (int i = 0; i < g.Nx; ++i) sq += std::norm(ts.at(0, i) - hrow[i]);
    return std::sqrt(g.dx() * sq);
  };
  return {dist(Side::y0, scn.h1), dist(Side::y1, scn.h2)};
}

PicardResult picard_window(const Scenario& scn, double t0, double t1, const SpectralField& u0,
                           const Trajectory* initial_guess) {
  scn.validate();
  if (!(t1 > t0)) throw std::invalid_argument("picard_window: t1 must exceed t0");
  if (t1 - t0 > scn.window_dt * (1.0 + 1e-9))
    throw std::invalid_argument("picard_window: window longer than window_dt");
  const Grid& g = scn.grid;
  if (!(u0.grid == g) || u0.c.size() != g.size())
    throw std::invalid_argument("picard_window: u0 grid mismatch");

  const int nt = scn.substeps;
  std::vector<double> times(nt + 1);
  const double dt = (t1 - t0) / nt;
  for (int m = 0; m <= nt; ++m) times[m] = (m == nt) ? t1 : t0 + m * dt;

  // Affine, u-independent part: W0(t - t0) u0 + W_b restarted at t0 + Duhamel
  // of the explicit source.  Also the default initial guess.
  Trajectory affine = apply_W0_traj(u0, times);
  if (!scn.h1.xhat.empty() || !scn.h2.xhat.empty()) {
    const Trajectory wb = apply_Wb(effective_h(scn, scn.h1, scn.h2),
                                   effective_h(scn, scn.h2, scn.h1), times);
    for (int m = 0; m <= nt; ++m)
      for (std::size_t q = 0; q < g.size(); ++q) affine.f[m].c[q] += wb.f[m].c[q];
  }
  if (scn.source) {
    Trajectory src;
    src.t = times;
    src.f.reserve(nt + 1);
    for (int m = 0; m <= nt; ++m) {
      const double t = times[m];
      src.f.push_back(forward_transform(
          PhysicalField::sample(g, [&](double x, double y) { return scn.source(x, y, t); })));
    }
    const Trajectory sphi = duhamel(src);
    for (int m = 0; m <= nt; ++m)
      for (std::size_t q = 0; q < g.size(); ++q) affine.f[m].c[q] += sphi.f[m].c[q];
  }

  const bool nonlinear = scn.lambda != 0.0;
  auto apply_map = [&](const Trajectory& v) -> Trajectory {
    if (!nonlinear) return affine;
    Trajectory f;
    f.t = times;
    f.f.reserve(nt + 1);
    for (int m = 0; m <= nt; ++m) {
      const PhysicalField w = inverse_transform(v.f[m]);
      const PhysicalField fw = scn.dealias ? nonlinearity_padded(w, scn.lambda, scn.p)
                                           : nonlinearity(w, scn.lambda, scn.p);
      f.f.push_back(forward_transform(fw));
    }
    Trajectory out = duhamel(f);
    for (int m = 0; m <= nt; ++m)
      for (std::size_t q = 0; q < g.size(); ++q) out.f[m].c[q] += affine.f[m].c[q];
    return out;
  };

  PicardResult res;
  Trajectory u = initial_guess ? *initial_guess : affine;
  if (initial_guess &&
      (u.t.size() != times.size() || u.f.empty() || !(u.grid() == g)))
    throw std::invalid_argument("picard_window: initial guess shape mismatch");

  double prev_diff = -1.0;
  for (int it = 1; it <= scn.picard_max_iter; ++it) {
    Trajectory next = apply_map(u);
    double diff = 0.0;
    SpectralField d(g);
    for (int m = 0; m <= nt; ++m) {
      for (std::size_t q = 0; q < g.size(); ++q) d.c[q] = next.f[m].c[q] - u.f[m].c[q];
      diff = std::max(diff, sobolev_norm(d, scn.s_monitor));
    }
    const double base = max_frame_norm(next, scn.s_monitor);
    const double scale = std::max(base, 1.0);
    const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale;
    res.iterations = it;
    if (prev_diff > floor && diff > floor) {
      res.rho = std::max(res.rho, diff / prev_diff);
      res.rho_valid = true;
    }
    u = std::move(next);
    if (diff <= scn.picard_tol * scale) {
      res.converged = true;
      break;
    }
    if (!(base < 1e10)) break;  // diverging; let the caller shrink the window
    prev_diff = diff;
  }
  res.traj = std::move(u);
  return res;
}

std::pair<Trajectory, SolveReport> march(const Scenario& scn) {
  scn.validate();
  SolveReport rep;
  rep.s_monitor = scn.s_monitor;
  const auto [r0, r1] = check_compatibility(scn);
  rep.r0 = r0;
  rep.r1 = r1;
  rep.compat_warning = std::max(r0, r1) > scn.compat_warn_tol;
  const SpectralField phi0 = effective_phi(scn);
  rep.mu = sobolev_norm(phi0, scn.s_monitor) +
           (scn.h1.xhat.empty() ? 0.0 : boundary_norm(scn.h1, scn.s_monitor)) +
           (scn.h2.xhat.empty() ? 0.0 : boundary_norm(scn.h2, scn.s_monitor));
  rep.report_r = 4.0;
  rep.theta_r = 1.0 / rep.report_r - 0.25;

  auto l4pow = [&](const SpectralField& F) {
    const double n4 = lr_norm(inverse_transform(F), 4.0);
    return n4 * n4 * n4 * n4;
  };

  Trajectory full;
  full.t = {0.0};
  full.f = {phi0};
  rep.t_series = {0.0};
  rep.l2_series = {sobolev_norm(phi0, 0.0)};
  rep.hs_series = {sobolev_norm(phi0, scn.s_monitor)};
  rep.l4_running = {0.0};
  double run4 = 0.0;
  double prev4 = l4pow(phi0);

  SpectralField ucur = phi0;
  double t = 0.0;
  double w = std::min(scn.window_dt, scn.T);
  const double underflow = 1e-6 * scn.T;
  while (t < scn.T * (1.0 - 1e-12)) {
    const double t1 = std::min(t + w, scn.T);
    PicardResult pr = picard_window(scn, t, t1, ucur);
    if (!pr.converged) {
      w *= 0.5;
      if (w < underflow) {
        rep.blowup = true;
        rep.blowup_time = t;
        break;
      }
      continue;
    }
    rep.windows.push_back({t, t1, pr.iterations, pr.rho, pr.rho_valid});
    rep.total_iterations += pr.iterations;
    for (std::size_t m = 1; m < pr.traj.steps(); ++m) {
      const SpectralField& F = pr.traj.f[m];
      const double tm = pr.traj.t[m];
      const double tprev = full.t.back();
      full.t.push_back(tm);
      full.f.push_back(F);
      rep.t_series.push_back(tm);
      rep.l2_series.push_back(sobolev_norm(F, 0.0));
      rep.hs_series.push_back(sobolev_norm(F, scn.s_monitor));
      const double cur4 = l4pow(F);
      run4 += 0.5 * (prev4 + cur4) * (tm - tprev);
      prev4 = cur4;
      rep.l4_running.push_back(std::pow(run4, 0.25));
    }
    ucur = pr.traj.f.back();
    t = t1;
    w = std::min(2.0 * w, std::min(scn.window_dt, scn.T));
  }
  return {std::move(full), std::move(rep)};
}

std::optional<double> detect_blowup(const SolveReport& report, double threshold) {
  for (std::size_t i = 0; i < report.hs_series.size(); ++i)
    if (report.hs_series[i] > threshold) return report.t_series[i];
  if (report.blowup) return report.blowup_time;
  return std::nullopt;
}

}  // namespace stripnls
