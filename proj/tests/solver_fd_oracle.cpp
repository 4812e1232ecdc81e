#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "stripnls/fd_oracle.hpp"
#include "stripnls/operators.hpp"
#include "stripnls/solver.hpp"
#include "stripnls/transforms.hpp"
#include "test_util.hpp"

using namespace stripnls;

namespace {

Scenario gaussian_scenario(double lambda, double T) {
  Scenario scn;
  scn.grid = Grid{8.0, 16, 8};
  scn.lambda = lambda;
  scn.p = 3.0;
  scn.T = T;
  scn.phi = forward_transform(PhysicalField::sample(scn.grid, [](double x, double y) {
    return 0.5 * std::exp(-x * x) * std::sin(M_PI * y);
  }));
  return scn;
}

double node_dist(const FdField& a, const FdField& b) {
  REQUIRE(a.v.size() == b.v.size());
  double sq = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i) sq += std::norm(a.v[i] - b.v[i]);
  return std::sqrt(a.grid.dx() * a.grid.dy() * sq);
}

}  // namespace

TEST_CASE("conservative averaging keeps the discrete mass flat") {
  const Scenario scn = gaussian_scenario(-1.0, 0.02);
  const FdGrid fg{8.0, 24, 13, 4e-4};
  const FdTrajectory tr = cn_solve(scn, fg, {0.0, 0.01, 0.02});
  REQUIRE(tr.f.size() == 3);
  const double m0 = fd_mass(tr.f.front());
  for (const FdField& F : tr.f) CHECK(std::abs(fd_mass(F) - m0) / m0 < 1e-12);
}

TEST_CASE("the walk is second order in time") {
  const Scenario scn = gaussian_scenario(-1.0, 0.02);
  std::vector<FdField> fin;
  for (double dt : {4e-4, 2e-4, 1e-4}) {
    const FdGrid fg{8.0, 24, 13, dt};
    fin.push_back(cn_solve(scn, fg, {0.0, scn.T}).f.back());
  }
  const double d1 = node_dist(fin[0], fin[1]);
  const double d2 = node_dist(fin[1], fin[2]);
  CHECK(d1 / d2 > 3.5);  // measured 3.998
  CHECK(d1 / d2 < 4.5);
}

TEST_CASE("the walk is second order in space against an exact mode") {
  Scenario scn;
  scn.grid = Grid{8.0, 8, 4};
  scn.lambda = 0.0;
  scn.T = 0.01;
  scn.phi = SpectralField(scn.grid);
  scn.phi.at(1, 2) = complexd(0.8, 0.0);
  Trajectory exact;
  exact.t = {0.0, scn.T};
  exact.f = {scn.phi, apply_W0(scn.phi, scn.T)};

  double err[2];
  int idx = 0;
  for (const auto& [mx, my] : std::vector<std::pair<int, int>>{{24, 13}, {48, 25}}) {
    const FdGrid fg{8.0, mx, my, 1e-5};
    const FdTrajectory tr = cn_solve(scn, fg, {0.0, scn.T});
    err[idx++] = compare(exact, tr, {scn.T})[0].l2;
  }
  CHECK(err[0] < 2e-2);
  CHECK(err[0] / err[1] > 3.5);  // measured 3.973
  CHECK(err[0] / err[1] < 4.5);
}

TEST_CASE("initial state synthesis places data and walls on the lattice") {
  Scenario scn;
  scn.grid = Grid{8.0, 16, 8};
  scn.T = 1.0;
  scn.phi = SpectralField(scn.grid);
  scn.phi.at(2, 1) = complexd(0.4, -0.2);
  scn.phi.at(14, 3) = complexd(-0.1, 0.3);
  scn.h1 = BoundaryData(scn.grid, scn.T, 4);
  scn.h2 = BoundaryData(scn.grid, scn.T, 4);
  const complexd c1(0.2, 0.1), c2(-0.3, 0.05);
  for (int m = 0; m <= 4; ++m) {
    scn.h1.at(m, 0) = c1;  // constant in x
    scn.h2.at(m, 1) = c2;  // first x-mode
  }

  const FdGrid fg{8.0, 20, 9, 1e-3};  // Mx deliberately != Nx
  const FdField U = fd_initial_state(scn, fg);

  const Grid& sg = scn.grid;
  for (int i = 0; i < fg.Mx; ++i) {
    for (int j = 1; j + 1 < fg.My; ++j) {
      complexd want(0.0, 0.0);
      for (int k = 0; k < sg.Nx; ++k)
        for (int n = 1; n <= sg.Ny; ++n)
          want += scn.phi.at(k, n) * std::exp(complexd(0.0, kPi * sg.xi(k) * fg.x(i))) *
                  std::sin(n * kPi * fg.y(j));
      CHECK(std::abs(U.at(i, j) - want) < 1e-13);
    }
    CHECK(std::abs(U.at(i, 0) - c1) < 1e-13);
    const complexd w2 = c2 * std::exp(complexd(0.0, kPi * sg.xi(1) * fg.x(i)));
    CHECK(std::abs(U.at(i, fg.My - 1) - w2) < 1e-13);
  }

  // compare() rebuilds the same synthesis at interior nodes, so the distance
  // between the initial frame and the spectral data vanishes
  Trajectory spec;
  spec.t = {0.0};
  spec.f = {scn.phi};
  FdTrajectory fd;
  fd.t = {0.0};
  fd.f = {U};
  const auto rows = compare(spec, fd, {0.0});
  CHECK(rows[0].l2 < 1e-13);
  CHECK(rows[0].linf < 1e-13);
  CHECK_THROWS_WITH_AS(compare(spec, fd, {0.5}), "compare: requested time not sampled",
                       std::invalid_argument);

  const FdGrid wrong{7.0, 20, 9, 1e-3};
  CHECK_THROWS_WITH_AS(fd_initial_state(scn, wrong), "fd_initial_state: cell length mismatch",
                       std::invalid_argument);
}

TEST_CASE("fd_mass sums the interior only") {
  const FdGrid fg{2.0, 4, 3, 1e-3};
  FdField u(fg);
  for (int i = 0; i < 4; ++i) {
    u.at(i, 0) = complexd(99.0, 0.0);
    u.at(i, 2) = complexd(-99.0, 0.0);
    u.at(i, 1) = complexd(double(i + 1), 0.0);
  }
  CHECK(fd_mass(u) == doctest::Approx(0.5 * 0.5 * (1.0 + 4.0 + 9.0 + 16.0)).epsilon(1e-14));
}

TEST_CASE("step-size guards and lattice validation") {
  const FdGrid fg{8.0, 32, 17, 1e-3};
  const double ix = 1.0 / (fg.dx() * fg.dx());
  const double iy = 1.0 / (fg.dy() * fg.dy());
  CHECK(fd_stable_dt(fg) == doctest::Approx(0.2 / (ix + iy)).epsilon(1e-15));

  CHECK_THROWS_WITH_AS((FdGrid{0.0, 32, 17, 1e-3}.validate()), "FdGrid: L_x must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((FdGrid{8.0, 3, 17, 1e-3}.validate()), "FdGrid: M_x must be >= 4",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((FdGrid{8.0, 32, 2, 1e-3}.validate()), "FdGrid: M_y must be >= 3",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((FdGrid{8.0, 32, 17, 0.0}.validate()), "FdGrid: dt must be positive",
                       std::invalid_argument);

  const Scenario scn = gaussian_scenario(0.0, 0.1);
  CHECK_THROWS_WITH_AS(cn_solve(scn, FdGrid{7.0, 32, 17, 1e-3}),
                       "cn_solve: cell length mismatch", std::invalid_argument);
  CHECK_THROWS_WITH_AS(cn_solve(scn, fg, {0.0, 0.3}), "cn_solve: output time outside [0, T]",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(cn_solve(scn, fg, {0.05, 0.05}), "cn_solve: output times must increase",
                       std::invalid_argument);

  // one giant step: the tridiagonal-free inner iteration cannot contract
  const FdGrid coarse{8.0, 32, 17, 1.0};
  CHECK_THROWS_WITH_AS(cn_solve(scn, coarse, {0.0, 0.1}),
                       "cn_solve: inner iteration did not converge; dt too large",
                       std::runtime_error);
}

TEST_CASE("output frames land exactly on the requested times") {
  const Scenario scn = gaussian_scenario(0.0, 0.02);
  const FdGrid fg{8.0, 16, 9, 5e-4};
  const FdTrajectory tr = cn_solve(scn, fg, {0.01, 0.02});  // no t = 0 frame requested
  REQUIRE(tr.t.size() == 2);
  CHECK(tr.t[0] == 0.01);
  CHECK(tr.t[1] == 0.02);
}
