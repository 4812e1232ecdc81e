#include "stripnls/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stripnls/norms.hpp"
#include "stripnls/operators.hpp"
#include "stripnls/transforms.hpp"

namespace stripnls {

namespace {

std::vector<double> uniform_times(double T, int M) {
  std::vector<double> t(M + 1);
  for (int m = 0; m <= M; ++m) t[m] = T * m / M;
  return t;
}

// Independent generator per sample: evaluation order never affects draws.
std::mt19937_64 sample_rng(std::uint64_t seed, int sample) {
  std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(sample + 1));
  rng.discard(8);
  return rng;
}

// Summary stats from a sorted copy so the reduction order is fixed.
void finalize(RatioStats& st, const Grid& g) {
  std::vector<double> sorted = st.ratio;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  st.max = sorted.empty() ? 0.0 : sorted.back();
  st.mean = sorted.empty() ? 0.0 : sum / double(sorted.size());
  st.resolution = std::to_string(g.Nx) + "x" + std::to_string(g.Ny);
}

SpectralField family_sample(const EstimateConfig& cfg, std::mt19937_64& rng) {
  const Grid& g = cfg.grid;
  switch (cfg.family) {
    case EstimateConfig::Family::random_band_limited:
      return random_band_limited(g, rng);
    case EstimateConfig::Family::single_mode: {
      const int mmax = std::min(std::max(1, g.Nx / 3), 10);
      const int nmax = std::min(std::max(1, 2 * g.Ny / 3), 16);
      std::uniform_int_distribution<int> dm(-mmax, mmax);
      std::uniform_int_distribution<int> dn(1, nmax);
      std::uniform_real_distribution<double> dphase(0.0, 2.0 * kPi);
      SpectralField F(g);
      const int m = dm(rng);
      const int n = dn(rng);
      const double ph = dphase(rng);
      F.at(m >= 0 ? m : m + g.Nx, n) = std::exp(complexd(0.0, ph));
      return F;
    }
    case EstimateConfig::Family::gaussian_bump: {
      std::uniform_real_distribution<double> dx0(-0.25 * g.Lx, 0.25 * g.Lx);
      std::uniform_real_distribution<double> dw(0.6, 1.6);
      std::uniform_real_distribution<double> dphase(0.0, 2.0 * kPi);
      std::uniform_int_distribution<int> dn(1, std::min(std::max(1, 2 * g.Ny / 3), 16));
      const double x0 = dx0(rng), w = dw(rng), ph = dphase(rng);
      const int n0 = dn(rng);
      const PhysicalField f = PhysicalField::sample(g, [&](double x, double y) {
        return std::exp(complexd(0.0, ph)) *
               std::exp(-(x - x0) * (x - x0) / (w * w)) * std::sin(n0 * kPi * y);
      });
      return forward_transform(f);
    }
  }
  throw std::logic_error("family_sample: unknown family");
}

// Pre-windowed random boundary datum: band-limited x-rows carrying smooth
// oscillating time profiles that vanish at both endpoints.  The stored window
// is 'none' because the samples already include the cut-off.
BoundaryData random_boundary(const Grid& g, double T, int M, std::mt19937_64& rng) {
  BoundaryData h(g, T, M);
  h.window.kind = WindowSpec::Kind::none;
  WindowSpec cut;
  cut.ramp_fraction = 0.25;
  // Fixed x band, canonical mode order: same seed, same datum on every grid.
  const int mmax = std::min(std::max(1, g.Nx / 3), 10);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> dfreq(-6.0, 6.0);
  std::uniform_real_distribution<double> dphase(0.0, 2.0 * kPi);
  for (int m = -mmax; m <= mmax; ++m) {
    const int k = m >= 0 ? m : m + g.Nx;
    const complexd c(gauss(rng), gauss(rng));
    const double om = dfreq(rng) / T;
    const double ph = dphase(rng);
    for (int mm = 0; mm <= M; ++mm) {
      const double t = h.time(mm);
      h.at(mm, k) = c * cut.value(t, T) * std::exp(complexd(0.0, om * t + ph));
    }
  }
  return h;
}

}  // namespace

void EstimateConfig::validate() const {
  grid.validate();
  if (ensemble_size < 1) throw std::invalid_argument("EstimateConfig: ensemble_size must be >= 1");
  if (!(r >= 2.0 && r <= 4.0)) throw std::invalid_argument("EstimateConfig: r must lie in [2,4]");
  if (s < 0.0) throw std::invalid_argument("EstimateConfig: s must be >= 0");
  if (!(sigma > 0.5)) throw std::invalid_argument("EstimateConfig: sigma must exceed 1/2");
  if (!(T > 0.0)) throw std::invalid_argument("EstimateConfig: T must be positive");
  if (time_samples < 4) throw std::invalid_argument("EstimateConfig: time_samples must be >= 4");
}

SpectralField random_band_limited(const Grid& g, std::mt19937_64& rng) {
  g.validate();
  // Fixed absolute band (clamped under 2/3 Nyquist): on every grid that
  // contains it, the same seed draws the same function, so refinement studies
  // compare one population across resolutions.
  const int mmax = std::min(std::max(1, g.Nx / 3), 10);
  const int nmax = std::min(std::max(1, 2 * g.Ny / 3), 16);
  std::normal_distribution<double> gauss;
  SpectralField F(g);
  for (int m = -mmax; m <= mmax; ++m) {
    const int k = m >= 0 ? m : m + g.Nx;
    for (int n = 1; n <= nmax; ++n) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      F.at(k, n) = complexd(re, im);
    }
  }
  const double nrm = sobolev_norm(F, 0.0);
  if (nrm > 0.0)
    for (complexd& z : F.c) z /= nrm;
  return F;
}

RatioStats ratio_W0(const EstimateConfig& cfg, W0Variant variant) {
  cfg.validate();
  const std::vector<double> times = uniform_times(cfg.T, cfg.time_samples);
  RatioStats st;
  for (int i = 0; i < cfg.ensemble_size; ++i) {
    std::mt19937_64 rng = sample_rng(cfg.seed, i);
    const SpectralField phi = family_sample(cfg, rng);
    const double data = sobolev_norm(phi, cfg.s);
    if (!(data > 0.0)) throw std::invalid_argument("ratio_W0: zero sample excluded");
    const Trajectory traj = apply_W0_traj(phi, times);
    double lhs, rhs;
    if (variant == W0Variant::strichartz) {
      lhs = lr_wsr_norm(traj, cfg.s, cfg.r);
      rhs = (std::sqrt(cfg.T) + std::pow(cfg.T, 0.5 - cfg.sigma)) * data;
    } else {
      lhs = linf_sobolev_norm(traj, cfg.s);
      rhs = data;
    }
    st.lhs.push_back(lhs);
    st.rhs.push_back(rhs);
    st.ratio.push_back(lhs / rhs);
  }
  finalize(st, cfg.grid);
  return st;
}

RatioStats ratio_duhamel(const EstimateConfig& cfg, double q) {
  cfg.validate();
  if (!(q > 1.0)) throw std::invalid_argument("ratio_duhamel: q must exceed 1");
  const double qdual = q / (q - 1.0);
  const std::vector<double> times = uniform_times(cfg.T, cfg.time_samples);
  RatioStats st;
  for (int i = 0; i < cfg.ensemble_size; ++i) {
    std::mt19937_64 rng = sample_rng(cfg.seed, i);
    const SpectralField base = family_sample(cfg, rng);
    std::uniform_real_distribution<double> dfreq(-8.0, 8.0);
    std::uniform_real_distribution<double> dphase(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> damp(0.3, 1.0);
    double om[3], ph[3], am[3];
    for (int l = 0; l < 3; ++l) {
      om[l] = dfreq(rng) / cfg.T;
      ph[l] = dphase(rng);
      am[l] = damp(rng);
    }
    Trajectory f;
    f.t = times;
    f.f.reserve(times.size());
    for (double t : times) {
      complexd prof(0.0, 0.0);
      for (int l = 0; l < 3; ++l) prof += am[l] * std::exp(complexd(0.0, om[l] * t + ph[l]));
      SpectralField F = base;
      for (complexd& z : F.c) z *= prof;
      f.f.push_back(std::move(F));
    }
    const Trajectory phi = duhamel(f);
    const double lhs =
        std::max(lr_wsr_norm(phi, cfg.s, q), linf_sobolev_norm(phi, cfg.s));
    const double rhs = lr_wsr_norm(f, cfg.s, qdual);
    if (!(rhs > 0.0)) throw std::invalid_argument("ratio_duhamel: zero forcing excluded");
    st.lhs.push_back(lhs);
    st.rhs.push_back(rhs);
    st.ratio.push_back(lhs / rhs);
  }
  finalize(st, cfg.grid);
  return st;
}

RatioStats ratio_Wb(const EstimateConfig& cfg) {
  cfg.validate();
  const std::vector<double> times = uniform_times(cfg.T, cfg.time_samples);
  RatioStats st;
  for (int i = 0; i < cfg.ensemble_size; ++i) {
    std::mt19937_64 rng = sample_rng(cfg.seed, i);
    const BoundaryData h1 = random_boundary(cfg.grid, cfg.T, cfg.time_samples, rng);
    const BoundaryData h2 = random_boundary(cfg.grid, cfg.T, cfg.time_samples, rng);
    const double rhs = boundary_norm(h1, cfg.s) + boundary_norm(h2, cfg.s);
    if (!(rhs > 0.0)) throw std::invalid_argument("ratio_Wb: zero data excluded");
    const Trajectory traj = apply_Wb(h1, h2, times);
    const double lhs =
        std::max(lr_wsr_norm(traj, cfg.s, cfg.r), linf_sobolev_norm(traj, cfg.s));
    st.lhs.push_back(lhs);
    st.rhs.push_back(rhs);
    st.ratio.push_back(lhs / rhs);
  }
  finalize(st, cfg.grid);
  return st;
}

SharpnessCurve sharpness_probe(double beta, int N_max, double sigma) {
  if (!(beta > 0.0)) throw std::invalid_argument("sharpness_probe: beta must be positive");
  if (N_max < 1) throw std::invalid_argument("sharpness_probe: N_max must be >= 1");
  if (sigma < 0.0) throw std::invalid_argument("sharpness_probe: sigma must be >= 0");

  // Fixed smooth H^1_x bump on the xi-band (0,1); midpoint quadrature (only
  // ratios of these integrals enter the curves).
  constexpr int kQuad = 200;
  auto g1 = [](double xi) { return std::exp(-1.0 / (xi * (1.0 - xi))); };
  double G = 0.0, G1 = 0.0;
  std::vector<double> qk(std::size_t(N_max) + 1, 0.0);
  for (int iq = 0; iq < kQuad; ++iq) {
    const double xi = (iq + 0.5) / kQuad;
    const double gg = g1(xi) * g1(xi);
    G += gg / kQuad;
    G1 += gg * (1.0 + xi * xi) / kQuad;
  }
  for (int np = 1; np <= N_max; ++np) {
    const double lam = double(np) * np + 1.0;  // pi^2-scaled time frequency
    double acc = 0.0;
    for (int iq = 0; iq < kQuad; ++iq) {
      const double xi = (iq + 0.5) / kQuad;
      acc += g1(xi) * g1(xi) * std::pow(1.0 + xi * xi + lam, 2.0 * sigma) / kQuad;
    }
    qk[np] = acc;
  }

  // The datum stacks oscillators e^{-i pi^2 (n'^2+1) t} with amplitudes
  // a_{n'} = 2 / n'^beta; the boundary operator couples oscillator n' into
  // output sine mode n with coefficient (n/pi) a_{n'} / (n^2 - n'^2 - 1).
  // The resonant pairs n = n' (denominator exactly -1) carry the divergence:
  // their squares sum to (4/pi^2) sum n^{2-2beta}, the growth law the probe
  // certifies.  Off-resonant couplings and the counter-rotating free modes
  // only add mass bounded uniformly in N, so the curve tracks the resonant
  // partial sum (a lower bound for the full output norm).
  SharpnessCurve curve;
  const double two_over_pi = 2.0 / kPi;
  double num = 0.0;
  for (int N = 1; N <= N_max; ++N) {
    const double a = 2.0 / std::pow(double(N), beta);
    num += (double(N) / kPi) * (double(N) / kPi) * a * a;
    const double lhs2 = G * two_over_pi * num;
    double hsig = 0.0, sum_a2 = 0.0;
    for (int np = 1; np <= N; ++np) {
      const double a = 2.0 / std::pow(double(np), beta);
      hsig += a * a * qk[np];
      sum_a2 += a * a;
    }
    const double rhs2 = two_over_pi * (hsig + G1 * sum_a2);
    curve.N.push_back(N);
    curve.lhs.push_back(std::sqrt(lhs2));
    curve.rhs.push_back(std::sqrt(rhs2));
    curve.ratio.push_back(std::sqrt(lhs2 / rhs2));
  }
  return curve;
}

std::vector<DependenceRow> dependence_probe(const Scenario& scn, int n_perturbations,
                                            double magnitude, std::uint64_t seed) {
  scn.validate();
  if (n_perturbations < 1)
    throw std::invalid_argument("dependence_probe: need at least one perturbation");
  if (!(magnitude > 0.0))
    throw std::invalid_argument("dependence_probe: zero perturbation excluded");
  const Grid& g = scn.grid;
  const auto [base_traj, base_rep] = march(scn);
  if (base_rep.blowup) throw std::runtime_error("dependence_probe: base run flagged blow-up");

  std::vector<DependenceRow> rows;
  rows.reserve(n_perturbations);
  for (int i = 0; i < n_perturbations; ++i) {
    std::mt19937_64 rng = sample_rng(seed, i);
    Scenario pert = scn;
    SpectralField dphi = random_band_limited(g, rng);
    for (complexd& z : dphi.c) z *= magnitude;
    if (pert.phi.c.empty()) pert.phi = SpectralField(g);
    for (std::size_t q = 0; q < g.size(); ++q) pert.phi.c[q] += dphi.c[q];
    double data_delta = sobolev_norm(dphi, scn.s_monitor);
    if (!scn.h1.xhat.empty()) {
      BoundaryData dh = random_boundary(g, scn.h1.T, scn.h1.M, rng);
      for (complexd& z : dh.xhat) z *= magnitude;
      for (std::size_t q = 0; q < dh.xhat.size(); ++q) pert.h1.xhat[q] += dh.xhat[q];
      data_delta += boundary_norm(dh, scn.s_monitor);
    }
    const auto [ptraj, prep] = march(pert);

    // Difference trajectory on the base sample times (windows normally align;
    // missing matches are skipped).
    Trajectory diff;
    for (std::size_t m = 0; m < base_traj.steps(); ++m) {
      const double t = base_traj.t[m];
      std::size_t match = ptraj.steps();
      for (std::size_t l = 0; l < ptraj.steps(); ++l)
        if (std::abs(ptraj.t[l] - t) <= 1e-9 * std::max(1.0, std::abs(t))) {
          match = l;
          break;
        }
      if (match == ptraj.steps()) continue;
      SpectralField d(g);
      for (std::size_t q = 0; q < g.size(); ++q)
        d.c[q] = ptraj.f[match].c[q] - base_traj.f[m].c[q];
      diff.t.push_back(t);
      diff.f.push_back(std::move(d));
    }
    if (diff.empty()) throw std::runtime_error("dependence_probe: no matching sample times");
    double sol_delta = linf_sobolev_norm(diff, scn.s_monitor);
    if (diff.steps() > 3 && diff.uniform())
      sol_delta = std::max(sol_delta, lr_wsr_norm(diff, scn.s_monitor, 4.0));
    rows.push_back({data_delta, sol_delta, sol_delta / data_delta});
  }
  return rows;
}

}  // namespace stripnls
