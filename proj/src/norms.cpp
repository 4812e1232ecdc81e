#include "stripnls/norms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "stripnls/kernels.hpp"
#include "stripnls/transforms.hpp"

namespace stripnls {

namespace {
using kernels::exec_mode;

bool is_inf(double r) { return r == std::numeric_limits<double>::infinity(); }

// Signed DFT bin for index m of an M-point transform.
int signed_bin(int m, int M) { return m < (M + 1) / 2 ? m : m - M; }
}  // namespace

void NormRequest::validate() const {
  if (s < 0.0) throw std::invalid_argument("NormRequest: s must be >= 0");
  if (!(r >= 2.0 && r <= 4.0)) throw std::invalid_argument("NormRequest: r must lie in [2,4]");
  if (sigma < 0.0) throw std::invalid_argument("NormRequest: sigma must be >= 0");
}

double sobolev_norm(const SpectralField& F, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  const Grid& g = F.grid;
  double sq;
  if (s == 0.0) {
    sq = kernels::weighted_sumsq(F.c, {}, exec_mode());
  } else {
    std::vector<double> w(g.size());
    for (int k = 0; k < g.Nx; ++k) {
      const double xik = g.xi(k);
      for (int n = 1; n <= g.Ny; ++n)
        w[std::size_t(k) * g.Ny + (n - 1)] =
            std::pow(1.0 + xik * xik + double(n) * n, s);
    }
    sq = kernels::weighted_sumsq(F.c, w, exec_mode());
  }
  return std::sqrt(g.cell_weight() * sq);
}

double l2_norm(const PhysicalField& f) {
  const double cell = f.grid.dx() * f.grid.dy();
  return std::sqrt(cell * kernels::weighted_sumsq(f.v, {}, exec_mode()));
}

double lr_norm(const PhysicalField& f, double r) {
  if (is_inf(r)) return kernels::max_abs(f.v, exec_mode());
  if (r < 1.0) throw std::invalid_argument("lr_norm: r must be >= 1");
  const double cell = f.grid.dx() * f.grid.dy();
  return std::pow(cell * kernels::sum_abs_pow(f.v, r, exec_mode()), 1.0 / r);
}

SpectralField bessel_multiply(const SpectralField& F, double s) {
  SpectralField out = F;
  if (s == 0.0) return out;
  const Grid& g = F.grid;
  for (int k = 0; k < g.Nx; ++k) {
    const double xik = g.xi(k);
    for (int n = 1; n <= g.Ny; ++n)
      out.at(k, n) *= std::pow(1.0 + xik * xik + double(n) * n, 0.5 * s);
  }
  return out;
}

double lebesgue_sobolev_norm(const PhysicalField& f, double s, double r) {
  if (s < 0.0) throw std::invalid_argument("lebesgue_sobolev_norm: s must be >= 0");
  if (s == 0.0) return lr_norm(f, r);
  return lr_norm(inverse_transform(bessel_multiply(forward_transform(f), s)), r);
}

double wsr_norm(const PhysicalField& f, double s, double r) {
  if (!(r >= 2.0 && r <= 4.0)) throw std::invalid_argument("wsr_norm: r must lie in [2,4]");
  return lebesgue_sobolev_norm(f, s, r);
}

double boundary_norm(const BoundaryData& h, double s) {
  if (s < 0.0) throw std::invalid_argument("boundary_norm: s must be >= 0");
  if (h.M < 2) throw std::invalid_argument("boundary_norm: need at least 3 time samples");
  const Grid& g = h.grid;
  const int M = h.M;  // periodic length: samples m = 0..M-1 of the windowed trace
  const double dt = h.dt();
  const double dlambda = 2.0 / (kPi * h.T);

  std::vector<double> win(M);
  for (int m = 0; m < M; ++m) win[m] = h.window.value(h.time(m), h.T);

  std::vector<complexd> series(M), spec(M);
  double sq = 0.0;
  for (int k = 0; k < g.Nx; ++k) {
    const double axi = std::abs(g.xi(k));
    for (int m = 0; m < M; ++m) series[m] = win[m] * h.at(m, k);
    dft_1d(series, spec);
    for (int m = 0; m < M; ++m) {
      const double lambda = 2.0 * signed_bin(m, M) / (kPi * h.T);
      const double al = std::abs(lambda);
      const double w2 = (1.0 + al + axi) * std::pow(1.0 + al + axi * axi, s);
      const complexd ht = dt * spec[m];
      sq += w2 * std::norm(ht) * dlambda;
    }
  }
  return std::sqrt(sq);
}

double bourgain_norm(const Trajectory& traj, double sigma, double s, const WindowSpec& w) {
  if (traj.t.size() < 4) throw std::invalid_argument("bourgain_norm: need at least 4 time samples");
  if (!traj.uniform()) throw std::invalid_argument("bourgain_norm: non-uniform time grid");
  const Grid& g = traj.grid();
  const int M = int(traj.t.size()) - 1;
  const double T = traj.t.back() - traj.t.front();
  const double dt = traj.dt();
  const double dlambda = 2.0 / (kPi * T);

  std::vector<double> win(M);
  for (int m = 0; m < M; ++m) win[m] = w.value(traj.t[m] - traj.t.front(), T);

  std::vector<complexd> series(M), spec(M);
  double sq = 0.0;
  for (int k = 0; k < g.Nx; ++k) {
    const double xik = g.xi(k);
    for (int n = 1; n <= g.Ny; ++n) {
      for (int m = 0; m < M; ++m) series[m] = win[m] * traj.f[m].at(k, n);
      dft_1d(series, spec);
      const double sw = std::pow(1.0 + std::abs(xik) + double(n), 2.0 * s);
      for (int m = 0; m < M; ++m) {
        // DFT bin m sits at lambda = -2 m~ / (pi T): the free mode e^{-i omega t}
        // then satisfies lambda + xi^2 + n^2 = 0 exactly.
        const double lambda = -2.0 * signed_bin(m, M) / (kPi * T);
        const double tw =
            std::pow(1.0 + std::abs(lambda + xik * xik + double(n) * n), 2.0 * sigma);
        sq += sw * tw * std::norm(dt * spec[m]);
      }
    }
  }
  return std::sqrt(g.cell_weight() * 0.5 * kPi * dlambda * sq);
}

double lr_wsr_norm(const Trajectory& traj, double s, double r) {
  if (traj.empty()) return 0.0;
  if (is_inf(r)) {
    double best = 0.0;
    for (const SpectralField& F : traj.f)
      best = std::max(best, lebesgue_sobolev_norm(inverse_transform(F), s,
                                                  std::numeric_limits<double>::infinity()));
    return best;
  }
  if (!traj.uniform()) throw std::invalid_argument("lr_wsr_norm: non-uniform time grid");
  const double dt = traj.dt();
  const std::size_t M = traj.t.size();
  double acc = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double wsr = lebesgue_sobolev_norm(inverse_transform(traj.f[m]), s, r);
    const double tw = (m == 0 || m + 1 == M) ? 0.5 : 1.0;  // trapezoid ends
    acc += tw * std::pow(wsr, r) * dt;
  }
  return std::pow(acc, 1.0 / r);
}

double linf_sobolev_norm(const Trajectory& traj, double s) {
  double best = 0.0;
  for (const SpectralField& F : traj.f) best = std::max(best, sobolev_norm(F, s));
  return best;
}

}  // namespace stripnls
