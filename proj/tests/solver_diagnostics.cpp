#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "stripnls/diagnostics.hpp"
#include "stripnls/norms.hpp"
#include "stripnls/solver.hpp"
#include "stripnls/transforms.hpp"
#include "test_util.hpp"

using namespace stripnls;

namespace {

Scenario resting_walls(double lambda, int substeps) {
  Scenario scn;
  scn.grid = Grid{8.0, 32, 16};
  scn.lambda = lambda;
  scn.p = 3.0;
  scn.T = 0.1;
  scn.window_dt = 0.05;
  scn.substeps = substeps;
  scn.phi = forward_transform(PhysicalField::sample(scn.grid, [](double x, double y) {
    return 0.5 * std::exp(-x * x) * std::sin(M_PI * y);
  }));
  return scn;
}

double max_abs_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Exact free solution carrying one x-mode and wall data on y = 0 only:
///   u*(x,y,t) = e^{i pi xi_1 (x - pi xi_1 t)} sum_j c_j sin(b_j (1-y)) e^{-i b_j^2 t}.
struct Manufactured {
  Trajectory traj;
  BoundaryData h1, h2;
  double mass0 = 0.0;
};

Manufactured wall_driven(int Ny, int nt, double c2) {
  const double T = 0.1, b1 = 2.3, b2 = 2.9;
  const Grid g{8.0, 8, Ny};
  const double xi = g.xi(1);
  Manufactured out;
  out.traj.t.resize(nt + 1);
  for (int m = 0; m <= nt; ++m) {
    const double t = m * T / nt;
    out.traj.t[m] = t;
    out.traj.f.push_back(forward_transform(PhysicalField::sample(g, [&](double x, double y) {
      const complexd carrier = std::exp(complexd(0.0, kPi * xi * x - kPi * kPi * xi * xi * t));
      return carrier * (std::sin(b1 * (1.0 - y)) * std::exp(complexd(0.0, -b1 * b1 * t)) +
                        c2 * std::sin(b2 * (1.0 - y)) * std::exp(complexd(0.0, -b2 * b2 * t)));
    })));
  }
  out.h1 = BoundaryData(g, T, nt);
  out.h1.window.kind = WindowSpec::Kind::none;
  for (int m = 0; m <= nt; ++m) {
    const double t = m * T / nt;
    out.h1.at(m, 1) = std::exp(complexd(0.0, -kPi * kPi * xi * xi * t)) *
                      (std::sin(b1) * std::exp(complexd(0.0, -b1 * b1 * t)) +
                       c2 * std::sin(b2) * std::exp(complexd(0.0, -b2 * b2 * t)));
  }
  out.h2 = BoundaryData(g, T, nt);
  out.h2.window.kind = WindowSpec::Kind::none;
  const double m0 = sobolev_norm(out.traj.f.front(), 0.0);
  out.mass0 = m0 * m0;
  return out;
}

}  // namespace

TEST_CASE("resting walls: conserved quantities drift at quadrature order") {
  double relm[3], rele[3];
  int idx = 0;
  for (int sub : {8, 16, 32}) {
    Scenario scn = resting_walls(-1.0, sub);
    auto [traj, rep] = march(scn);
    const BalanceReport br = balance_report(traj, scn);
    relm[idx] = max_abs_of(br.mass_residual) / br.mass[0];
    rele[idx] = max_abs_of(br.energy_residual) / std::abs(br.energy[0]);
    ++idx;
  }
  CHECK(relm[1] < 1e-6);
  for (int i : {0, 1}) {
    CHECK(std::log2(relm[i] / relm[i + 1]) >= 1.9);
    CHECK(std::log2(rele[i] / rele[i + 1]) >= 1.9);
  }
}

TEST_CASE("resting walls: the linear flow conserves everything to rounding") {
  Scenario scn = resting_walls(0.0, 16);
  auto [traj, rep] = march(scn);
  const BalanceReport br = balance_report(traj, scn);

  CHECK(max_abs_of(br.mass_residual) / br.mass[0] < 1e-12);
  CHECK(max_abs_of(br.energy_residual) / std::abs(br.energy[0]) < 1e-12);
  // no wall data: the flux column is identically zero, not merely small
  for (double f : br.mass_flux) CHECK(f == 0.0);
  CHECK(br.trace_margin.empty());

  // independent quadratic-form oracle for the stored energy at lambda = 0
  const Grid& g = scn.grid;
  double esum = 0.0;
  for (int k = 0; k < g.Nx; ++k)
    for (int n = 1; n <= g.Ny; ++n) esum += g.omega(k, n) * std::norm(scn.phi.at(k, n));
  esum *= g.cell_weight();
  CHECK(br.energy[0] == doctest::Approx(esum).epsilon(1e-12));

  CHECK(br.t.size() == traj.steps());
  CHECK(br.dx == g.dx());
  CHECK(br.dy == g.dy());
  CHECK(br.dt == doctest::Approx(traj.dt()).epsilon(1e-12));
  for (std::size_t m = 0; m < traj.steps(); ++m) {
    const double l2 = sobolev_norm(traj.f[m], 0.0);
    CHECK(br.mass[m] == doctest::Approx(l2 * l2).epsilon(1e-12));
    CHECK(br.h1_norm[m] == doctest::Approx(sobolev_norm(traj.f[m], 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("wall-driven flow closes the mass balance under refinement") {
  // two y-frequencies, so the wall flux genuinely moves mass in and out
  double res[3], swing = 0.0;
  int idx = 0;
  for (const auto& [Ny, nt] : std::vector<std::pair<int, int>>{{16, 64}, {32, 128}, {64, 256}}) {
    const Manufactured mf = wall_driven(Ny, nt, 0.6);
    res[idx] = max_abs_of(mass_balance(mf.traj, mf.h1, mf.h2)) / mf.mass0;
    if (idx == 2) {
      double lo = 1e300, hi = -1e300;
      for (const SpectralField& F : mf.traj.f) {
        const double m = sobolev_norm(F, 0.0);
        lo = std::min(lo, m * m);
        hi = std::max(hi, m * m);
      }
      swing = (hi - lo) / mf.mass0;
    }
    ++idx;
  }
  CHECK(res[0] < 3e-2);
  CHECK(res[1] < res[0]);
  CHECK(res[2] < res[1]);
  // at least first order over the two doublings
  CHECK(std::log(res[0] / res[2]) / std::log(4.0) >= 1.0);
  // the exercised flux is not degenerate: the mass actually swings
  CHECK(swing > 1e-2);
}

TEST_CASE("single-frequency wall data closes the balance to rounding") {
  const Manufactured mf = wall_driven(32, 128, 0.0);
  CHECK(max_abs_of(mass_balance(mf.traj, mf.h1, mf.h2)) / mf.mass0 < 1e-12);
}

TEST_CASE("mass residuals are invariant under a global phase") {
  const Manufactured mf = wall_driven(32, 128, 0.6);
  const std::vector<double> res = mass_balance(mf.traj, mf.h1, mf.h2);

  const complexd rot = std::exp(complexd(0.0, 0.7));
  Manufactured rotated = mf;
  for (SpectralField& F : rotated.traj.f)
    for (complexd& c : F.c) c *= rot;
  for (complexd& c : rotated.h1.xhat) c *= rot;
  const std::vector<double> res2 = mass_balance(rotated.traj, rotated.h1, rotated.h2);

  REQUIRE(res.size() == res2.size());
  double diff = 0.0;
  for (std::size_t m = 0; m < res.size(); ++m) diff = std::max(diff, std::abs(res[m] - res2[m]));
  CHECK(diff < 1e-12 * mf.mass0);
}

TEST_CASE("wall-derivative bound: guard, resting walls, and driven walls") {
  Scenario lin = resting_walls(0.0, 8);
  auto [ltraj, lrep] = march(lin);
  CHECK_THROWS_WITH_AS(trace_inequality_margin(ltraj, lin),
                       "trace_inequality_margin: requires lambda < 0", std::invalid_argument);

  Scenario rest = resting_walls(-1.0, 16);
  auto [rtraj, rrep] = march(rest);
  const std::vector<double> rm = trace_inequality_margin(rtraj, rest);
  REQUIRE(rm.size() == rtraj.steps());
  CHECK(*std::min_element(rm.begin(), rm.end()) > 0.0);

  // driven wall: pulse on y = 0, carried by one x-mode
  Scenario drv;
  drv.grid = Grid{8.0, 32, 16};
  drv.lambda = -1.0;
  drv.p = 3.0;
  drv.T = 0.1;
  drv.window_dt = 0.05;
  drv.substeps = 24;
  drv.phi = forward_transform(PhysicalField::sample(drv.grid, [](double x, double y) {
    return 0.3 * std::exp(-x * x) * std::sin(M_PI * y);
  }));
  drv.h1 = BoundaryData(drv.grid, drv.T, 192);
  drv.h1.window.kind = WindowSpec::Kind::none;
  for (int m = 0; m <= 192; ++m) {
    const double b = std::sin(M_PI * drv.h1.time(m) / 0.12);
    drv.h1.at(m, 1) = 0.05 * b * b;
  }
  auto [dtraj, drep] = march(drv);
  const TraceTerms ts = trace_inequality_terms(dtraj, drv);
  REQUIRE(!ts.margin.empty());
  CHECK(ts.lhs.front() == 0.0);
  for (std::size_t m = 1; m < ts.lhs.size(); ++m) CHECK(ts.lhs[m] >= ts.lhs[m - 1]);
  const double mmin = *std::min_element(ts.margin.begin(), ts.margin.end());
  const double rmax = *std::max_element(ts.rhs.begin(), ts.rhs.end());
  CHECK(mmin >= -1e-6 * rmax);
  CHECK(mmin > 0.1);  // measured 0.2206 at this resolution
  for (std::size_t m = 0; m < ts.margin.size(); ++m)
    CHECK(ts.margin[m] == doctest::Approx(ts.rhs[m] - ts.lhs[m]).epsilon(1e-12));

  const H1GrowthTable hm = h1_growth_monitor(dtraj, drv);
  CHECK(hm.sup_h1 >= hm.phi_h1);
  CHECK(hm.phi_h1 == doctest::Approx(sobolev_norm(drv.phi, 1.0)).epsilon(1e-12));
  CHECK(hm.t_at_sup >= 0.0);
  CHECK(hm.t_at_sup <= drv.T);
  CHECK(hm.h1_data_norm == doctest::Approx(boundary_norm(drv.h1, 1.0)).epsilon(1e-12));
  CHECK(hm.h2_data_norm == 0.0);

  const BalanceReport br = balance_report(dtraj, drv);
  CHECK(br.trace_margin.size() == dtraj.steps());
}
