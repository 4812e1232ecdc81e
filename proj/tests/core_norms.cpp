#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <doctest.h>

#include "stripnls/norms.hpp"
#include "stripnls/transforms.hpp"

#include "test_util.hpp"

using namespace stripnls;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PhysicalField random_physical(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  PhysicalField f(g);
  for (complexd& v : f.v) v = complexd(normal(rng), normal(rng));
  return f;
}

Trajectory random_trajectory(const Grid& g, int frames, double T, std::uint64_t seed) {
  Trajectory traj;
  for (int m = 0; m < frames; ++m) {
    traj.t.push_back(T * m / (frames - 1));
    traj.f.push_back(testutil::random_field(g, seed + m));
  }
  return traj;
}

// O(M^2) forward DFT, independent of the library routine.
std::vector<complexd> naive_dft(const std::vector<complexd>& in) {
  const int M = int(in.size());
  std::vector<complexd> out(M);
  for (int m = 0; m < M; ++m) {
    complexd acc = 0.0;
    for (int j = 0; j < M; ++j)
      acc += in[j] * std::exp(complexd(0.0, -2.0 * kPi * m * j / M));
    out[m] = acc;
  }
  return out;
}

int signed_bin(int m, int M) { return m < (M + 1) / 2 ? m : m - M; }

}  // namespace

TEST_CASE("sobolev_norm matches the weighted coefficient sum") {
  const Grid g{6.0, 8, 5};
  const SpectralField F = testutil::random_field(g, 5);
  const double s = 1.35;
  double sq = 0.0;
  for (int k = 0; k < g.Nx; ++k)
    for (int n = 1; n <= g.Ny; ++n) {
      const double xik = g.xi(k);
      sq += std::pow(1.0 + xik * xik + double(n) * n, s) * std::norm(F.at(k, n));
    }
  CHECK(sobolev_norm(F, s) == doctest::Approx(std::sqrt(g.cell_weight() * sq)).epsilon(1e-13));
  CHECK_THROWS_WITH_AS(sobolev_norm(F, -0.5), "sobolev_norm: s must be >= 0",
                       std::invalid_argument);
}

TEST_CASE("Lebesgue norms match direct quadrature") {
  const Grid g{6.0, 8, 5};
  const PhysicalField f = random_physical(g, 6);
  const double cell = g.dx() * g.dy();

  double sq = 0.0, s33 = 0.0, mx = 0.0;
  for (const complexd& v : f.v) {
    sq += std::norm(v);
    s33 += std::pow(std::abs(v), 3.3);
    mx = std::max(mx, std::abs(v));
  }
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(cell * sq)).epsilon(1e-13));
  CHECK(lr_norm(f, 3.3) == doctest::Approx(std::pow(cell * s33, 1.0 / 3.3)).epsilon(1e-13));
  CHECK(lr_norm(f, kInf) == doctest::Approx(mx).epsilon(1e-14));
  CHECK_THROWS_WITH_AS(lr_norm(f, 0.5), "lr_norm: r must be >= 1", std::invalid_argument);

  // homogeneity
  PhysicalField f2 = f;
  for (complexd& v : f2.v) v *= complexd(-1.7, 0.6);
  const double a = std::abs(complexd(-1.7, 0.6));
  CHECK(lr_norm(f2, 3.3) == doctest::Approx(a * lr_norm(f, 3.3)).epsilon(1e-13));
}

TEST_CASE("lebesgue_sobolev_norm degenerate cases and guard") {
  const Grid g{6.0, 8, 5};
  const PhysicalField f = random_physical(g, 7);
  CHECK(lebesgue_sobolev_norm(f, 0.0, 2.6) == lr_norm(f, 2.6));
  CHECK(lebesgue_sobolev_norm(f, 1.2, 2.0) ==
        doctest::Approx(sobolev_norm(bessel_multiply(forward_transform(f), 1.2), 0.0))
            .epsilon(1e-12));
  CHECK(wsr_norm(f, 0.7, 4.0) == lebesgue_sobolev_norm(f, 0.7, 4.0));
  CHECK_THROWS_WITH_AS(wsr_norm(f, 0.0, 1.9), "wsr_norm: r must lie in [2,4]",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(wsr_norm(f, 0.0, 4.1), "wsr_norm: r must lie in [2,4]",
                       std::invalid_argument);
}

TEST_CASE("NormRequest validation") {
  CHECK_NOTHROW((NormRequest{0.0, 2.0, 0.0}.validate()));
  CHECK_THROWS_WITH_AS((NormRequest{-1.0, 2.0, 0.0}.validate()), "NormRequest: s must be >= 0",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((NormRequest{0.0, 1.0, 0.0}.validate()),
                       "NormRequest: r must lie in [2,4]", std::invalid_argument);
  CHECK_THROWS_WITH_AS((NormRequest{0.0, 2.0, -0.2}.validate()),
                       "NormRequest: sigma must be >= 0", std::invalid_argument);
}

TEST_CASE("boundary_norm matches an independent windowed-DFT evaluation") {
  const Grid g{8.0, 8, 3};
  const double T = 0.7;
  const int M = 10;
  BoundaryData h(g, T, M);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (complexd& v : h.xhat) v = complexd(normal(rng), normal(rng));
  const double s = 0.8;

  const double dt = h.dt();
  const double dlambda = 2.0 / (kPi * T);
  double sq = 0.0;
  for (int k = 0; k < g.Nx; ++k) {
    const double axi = std::abs(g.xi(k));
    std::vector<complexd> series(M);
    for (int m = 0; m < M; ++m) series[m] = h.window.value(h.time(m), T) * h.at(m, k);
    const std::vector<complexd> spec = naive_dft(series);
    for (int m = 0; m < M; ++m) {
      const double lambda = 2.0 * signed_bin(m, M) / (kPi * T);
      const double al = std::abs(lambda);
      const double w2 = (1.0 + al + axi) * std::pow(1.0 + al + axi * axi, s);
      sq += w2 * std::norm(dt * spec[m]) * dlambda;
    }
  }
  CHECK(boundary_norm(h, s) == doctest::Approx(std::sqrt(sq)).epsilon(1e-12));

  SUBCASE("monotone in s and homogeneous") {
    CHECK(boundary_norm(h, 1.4) >= boundary_norm(h, 0.3));
    BoundaryData h2 = h;
    for (complexd& v : h2.xhat) v *= 2.0;
    CHECK(boundary_norm(h2, s) == doctest::Approx(2.0 * boundary_norm(h, s)).epsilon(1e-13));
  }

  SUBCASE("guards") {
    CHECK_THROWS_WITH_AS(boundary_norm(h, -0.1), "boundary_norm: s must be >= 0",
                         std::invalid_argument);
    BoundaryData tiny(g, T, 1);
    CHECK_THROWS_WITH_AS(boundary_norm(tiny, 0.0),
                         "boundary_norm: need at least 3 time samples", std::invalid_argument);
  }
}

TEST_CASE("bourgain_norm at sigma = s = 0 is the windowed space-time L2") {
  const Grid g{3.0, 6, 3};
  const double T = 0.9;
  const Trajectory traj = random_trajectory(g, 9, T, 30);
  WindowSpec w;
  w.ramp_fraction = 0.2;

  const int M = int(traj.t.size()) - 1;
  const double dt = traj.dt();
  double acc = 0.0;
  for (int m = 0; m < M; ++m) {
    const double wm = w.value(traj.t[m], T);
    const double l2 = sobolev_norm(traj.f[m], 0.0);
    acc += dt * wm * wm * l2 * l2;
  }
  CHECK(bourgain_norm(traj, 0.0, 0.0, w) == doctest::Approx(std::sqrt(acc)).epsilon(1e-12));
}

TEST_CASE("bourgain_norm matches an independent evaluation at generic weights") {
  const Grid g{3.0, 6, 3};
  const double T = 1.1;
  const Trajectory traj = random_trajectory(g, 9, T, 40);
  WindowSpec w;
  w.ramp_fraction = 0.15;
  const double sigma = 0.4, s = 0.6;

  const int M = int(traj.t.size()) - 1;
  const double dt = traj.dt();
  const double dlambda = 2.0 / (kPi * T);
  double sq = 0.0;
  for (int k = 0; k < g.Nx; ++k) {
    const double xik = g.xi(k);
    for (int n = 1; n <= g.Ny; ++n) {
      std::vector<complexd> series(M);
      for (int m = 0; m < M; ++m)
        series[m] = w.value(traj.t[m], T) * traj.f[m].at(k, n);
      const std::vector<complexd> spec = naive_dft(series);
      const double sw = std::pow(1.0 + std::abs(xik) + double(n), 2.0 * s);
      for (int m = 0; m < M; ++m) {
        const double lambda = -2.0 * signed_bin(m, M) / (kPi * T);
        const double tw =
            std::pow(1.0 + std::abs(lambda + xik * xik + double(n) * n), 2.0 * sigma);
        sq += sw * tw * std::norm(dt * spec[m]);
      }
    }
  }
  const double want = std::sqrt(g.cell_weight() * 0.5 * kPi * dlambda * sq);
  CHECK(bourgain_norm(traj, sigma, s, w) == doctest::Approx(want).epsilon(1e-12));

  SUBCASE("guards") {
    Trajectory short_traj = traj;
    short_traj.t.resize(3);
    short_traj.f.resize(3);
    CHECK_THROWS_WITH_AS(bourgain_norm(short_traj, 0.0, 0.0, w),
                         "bourgain_norm: need at least 4 time samples", std::invalid_argument);
    Trajectory skew = traj;
    skew.t[4] += 0.01;
    CHECK_THROWS_WITH_AS(bourgain_norm(skew, 0.0, 0.0, w),
                         "bourgain_norm: non-uniform time grid", std::invalid_argument);
  }
}

TEST_CASE("trajectory Lebesgue norms") {
  const Grid g{6.0, 8, 5};
  const SpectralField F = testutil::random_field(g, 50);
  const double T = 0.8;
  Trajectory traj;
  for (int m = 0; m < 7; ++m) {
    traj.t.push_back(T * m / 6.0);
    traj.f.push_back(F);
  }

  SUBCASE("constant trajectory integrates exactly") {
    const double wsr = wsr_norm(inverse_transform(F), 0.4, 3.0);
    CHECK(lr_wsr_norm(traj, 0.4, 3.0) ==
          doctest::Approx(std::pow(T, 1.0 / 3.0) * wsr).epsilon(1e-13));
    CHECK(lr_wsr_norm(traj, 0.4, kInf) ==
          doctest::Approx(lebesgue_sobolev_norm(inverse_transform(F), 0.4, kInf)));
  }

  SUBCASE("non-uniform grid rejected") {
    traj.t[3] += 0.02;
    CHECK_THROWS_WITH_AS(lr_wsr_norm(traj, 0.0, 2.0), "lr_wsr_norm: non-uniform time grid",
                         std::invalid_argument);
  }

  SUBCASE("sup norm is the frame maximum") {
    Trajectory mixed = random_trajectory(g, 5, T, 60);
    double best = 0.0;
    for (const SpectralField& G : mixed.f) best = std::max(best, sobolev_norm(G, 1.1));
    CHECK(linf_sobolev_norm(mixed, 1.1) == best);
  }
}
