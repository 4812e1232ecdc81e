#include "stripnls/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stripnls/kernels.hpp"
#include "stripnls/transforms.hpp"

namespace stripnls {

namespace {
using kernels::exec_mode;

void require_uniform(const std::vector<double>& t, const char* who) {
  if (t.size() < 2) throw std::invalid_argument(std::string(who) + ": need at least 2 times");
  const double h = t[1] - t[0];
  if (!(h > 0.0)) throw std::invalid_argument(std::string(who) + ": times must increase");
  for (std::size_t m = 1; m + 1 < t.size(); ++m)
    if (std::abs((t[m + 1] - t[m]) - h) > 1e-9 * h)
      throw std::invalid_argument(std::string(who) + ": non-uniform time grid");
}

// phi1(x) = (e^x - 1)/x, phi2(x) = (e^x - 1 - x)/x^2, series near 0.
complexd phi1(complexd x) {
  if (std::abs(x) < 0.5) {
    complexd term(1.0, 0.0), sum(1.0, 0.0);
    for (int j = 1; j < 24; ++j) {
      term *= x / double(j + 1);
      sum += term;
    }
    return sum;
  }
  return (std::exp(x) - 1.0) / x;
}

complexd phi2(complexd x) {
  if (std::abs(x) < 0.5) {
    complexd term(0.5, 0.0), sum(0.5, 0.0);
    for (int j = 1; j < 24; ++j) {
      term *= x / double(j + 2);
      sum += term;
    }
    return sum;
  }
  return (std::exp(x) - 1.0 - x) / (x * x);
}

struct SweepWeights {
  std::vector<complexd> decay, wl, wr;
};

// Per-mode step weights for I_{m+1} = e^{-i z} I_m + wl f_m + wr f_{m+1},
// z = omega dt: exact integration of the linear interpolant of f against
// e^{-i omega (t-tau)}.
SweepWeights sweep_weights(const Grid& g, double dt) {
  SweepWeights w;
  const std::size_t n = g.size();
  w.decay.resize(n);
  w.wl.resize(n);
  w.wr.resize(n);
  for (int k = 0; k < g.Nx; ++k)
    for (int nn = 1; nn <= g.Ny; ++nn) {
      const std::size_t q = std::size_t(k) * g.Ny + (nn - 1);
      const double z = g.omega(k, nn) * dt;
      const complexd x(0.0, -z);
      const complexd p1 = phi1(x), p2 = phi2(x);
      w.decay[q] = std::exp(x);
      w.wl[q] = dt * (p1 - p2);
      w.wr[q] = dt * p2;
    }
  return w;
}

}  // namespace

Propagator::Propagator(const Grid& g) : grid(g), omega(g.size()) {
  g.validate();
  for (int k = 0; k < g.Nx; ++k)
    for (int n = 1; n <= g.Ny; ++n) omega[std::size_t(k) * g.Ny + (n - 1)] = g.omega(k, n);
}

SpectralField apply_W0(const SpectralField& phi, double t) {
  const Propagator prop(phi.grid);
  SpectralField out(phi.grid);
  kernels::phase_exp_multiply(phi.c, prop.omega, t, out.c, exec_mode());
  return out;
}

Trajectory apply_W0_traj(const SpectralField& phi, const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("apply_W0_traj: empty time grid");
  const Propagator prop(phi.grid);
  Trajectory traj;
  traj.t = times;
  traj.f.reserve(times.size());
  for (double t : times) {
    SpectralField F(phi.grid);
    kernels::phase_exp_multiply(phi.c, prop.omega, t - times.front(), F.c, exec_mode());
    traj.f.push_back(std::move(F));
  }
  return traj;
}

Trajectory duhamel(const Trajectory& f_traj) {
  require_uniform(f_traj.t, "duhamel");
  const Grid& g = f_traj.grid();
  const double dt = f_traj.t[1] - f_traj.t[0];
  const SweepWeights w = sweep_weights(g, dt);
  std::vector<complexd> pref(g.size(), complexd(0.0, 1.0));

  Trajectory out;
  out.t = f_traj.t;
  out.f.assign(f_traj.t.size(), SpectralField(g));
  std::vector<complexd*> dst(out.f.size());
  std::vector<const complexd*> src(f_traj.f.size());
  for (std::size_t m = 0; m < out.f.size(); ++m) {
    dst[m] = out.f[m].c.data();
    src[m] = f_traj.f[m].c.data();
  }
  kernels::exp_product_sweep(dst, src, g.size(), w.decay, w.wl, w.wr, pref, exec_mode());
  return out;
}

Trajectory apply_Wb(const BoundaryData& h1, const BoundaryData& h2,
                    const std::vector<double>& t_grid) {
  if (!(h1.grid == h2.grid)) throw std::invalid_argument("apply_Wb: grid mismatch");
  if (h1.M != h2.M || h1.T != h2.T) throw std::invalid_argument("apply_Wb: t_grid mismatch");
  require_uniform(t_grid, "apply_Wb");
  const Grid& g = h1.grid;
  const double dt = t_grid[1] - t_grid[0];
  const SweepWeights w = sweep_weights(g, dt);

  std::vector<complexd> pref(g.size());
  for (int k = 0; k < g.Nx; ++k)
    for (int n = 1; n <= g.Ny; ++n)
      pref[std::size_t(k) * g.Ny + (n - 1)] = complexd(0.0, 2.0 * kPi * n);

  // Integrand frames (hhat1 - (-1)^n hhat2)(xi_k, t_m), built in place and
  // swept in place (the sweep is alias-safe).
  Trajectory out;
  out.t = t_grid;
  out.f.assign(t_grid.size(), SpectralField(g));
  for (std::size_t m = 0; m < t_grid.size(); ++m) {
    SpectralField& F = out.f[m];
    for (int k = 0; k < g.Nx; ++k) {
      const complexd a = h1.sample(k, t_grid[m]);
      const complexd b = h2.sample(k, t_grid[m]);
      for (int n = 1; n <= g.Ny; ++n)
        F.at(k, n) = (n % 2 == 0) ? a - b : a + b;
    }
  }
  std::vector<complexd*> frames(out.f.size());
  for (std::size_t m = 0; m < out.f.size(); ++m) frames[m] = out.f[m].c.data();
  std::vector<const complexd*> cframes(frames.begin(), frames.end());
  kernels::exp_product_sweep(frames, cframes, g.size(), w.decay, w.wl, w.wr, pref, exec_mode());
  return out;
}

std::vector<complexd> sine_eval_coeffs(const SpectralField& F, double y) {
  const Grid& g = F.grid;
  std::vector<complexd> row(g.Nx, complexd(0.0, 0.0));
  std::vector<double> sy(g.Ny);
  for (int n = 1; n <= g.Ny; ++n) sy[n - 1] = std::sin(n * kPi * y);
  for (int k = 0; k < g.Nx; ++k) {
    complexd acc(0.0, 0.0);
    for (int n = 1; n <= g.Ny; ++n) acc += F.at(k, n) * sy[n - 1];
    row[k] = acc;
  }
  return row;
}

std::vector<complexd> x_synthesis_row(const Grid& g, std::span<const complexd> coeffs) {
  if (coeffs.size() != std::size_t(g.Nx))
    throw std::invalid_argument("x_synthesis_row: coefficient row has wrong length");
  // u_i = sum_k c_k e^{i pi xi_k x_i}: twiddle then inverse DFT via conjugation.
  std::vector<complexd> tmp(g.Nx), row(g.Nx);
  for (int k = 0; k < g.Nx; ++k) {
    const complexd c = (k % 2 != 0) ? -coeffs[k] : coeffs[k];
    tmp[k] = std::conj(c);
  }
  dft_1d(tmp, row);
  for (int i = 0; i < g.Nx; ++i) row[i] = std::conj(row[i]);
  return row;
}

std::vector<complexd> sine_eval_row(const SpectralField& F, double y) {
  return x_synthesis_row(F.grid, sine_eval_coeffs(F, y));
}

TraceSeries boundary_trace(const Trajectory& traj, Side side, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("boundary_trace: eps must lie in (0, 1/2)");
  const Grid& g = traj.grid();
  const double y = (side == Side::y0) ? eps : 1.0 - eps;
  TraceSeries out;
  out.t = traj.t;
  out.Nx = g.Nx;
  out.values.resize(traj.t.size() * std::size_t(g.Nx));
  for (std::size_t m = 0; m < traj.t.size(); ++m) {
    const std::vector<complexd> row = sine_eval_row(traj.f[m], y);
    std::copy(row.begin(), row.end(), out.values.begin() + std::ptrdiff_t(m) * g.Nx);
  }
  return out;
}

std::vector<complexd> extrapolated_trace_coeffs(const SpectralField& F, Side side, double eps) {
  const Grid& g = F.grid;
  if (eps <= 0.0) eps = 0.5 / (g.Ny + 1);
  constexpr int kNodes = 6;
  if (!(kNodes * eps < 0.5))
    throw std::invalid_argument("extrapolated_trace: eps too large for 6 nodes");
  // Lagrange weights for extrapolating values at {1..6} to 0 (eps cancels).
  double w[kNodes];
  for (int j = 1; j <= kNodes; ++j) {
    double prod = 1.0;
    for (int l = 1; l <= kNodes; ++l)
      if (l != j) prod *= double(-l) / double(j - l);
    w[j - 1] = prod;
  }
  std::vector<complexd> acc(g.Nx, complexd(0.0, 0.0));
  for (int j = 1; j <= kNodes; ++j) {
    const double y = (side == Side::y0) ? j * eps : 1.0 - j * eps;
    const std::vector<complexd> c = sine_eval_coeffs(F, y);
    for (int k = 0; k < g.Nx; ++k) acc[k] += w[j - 1] * c[k];
  }
  return acc;
}

TraceSeries extrapolated_trace(const Trajectory& traj, Side side, double eps) {
  const Grid& g = traj.grid();
  TraceSeries out;
  out.t = traj.t;
  out.Nx = g.Nx;
  out.values.resize(traj.t.size() * std::size_t(g.Nx));
  for (std::size_t m = 0; m < traj.t.size(); ++m) {
    const std::vector<complexd> row =
        x_synthesis_row(g, extrapolated_trace_coeffs(traj.f[m], side, eps));
    std::copy(row.begin(), row.end(), out.values.begin() + std::ptrdiff_t(m) * g.Nx);
  }
  return out;
}

}  // namespace stripnls
