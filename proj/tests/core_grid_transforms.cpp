#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "stripnls/norms.hpp"
#include "stripnls/transforms.hpp"

#include "test_util.hpp"

using namespace stripnls;

namespace {

// O(N^2) synthesis straight from the definition, no FFT machinery.
PhysicalField direct_synthesis(const SpectralField& F) {
  const Grid& g = F.grid;
  PhysicalField out(g);
  for (int i = 0; i < g.Nx; ++i)
    for (int j = 0; j < g.Ny; ++j) {
      complexd acc = 0.0;
      for (int k = 0; k < g.Nx; ++k)
        for (int n = 1; n <= g.Ny; ++n)
          acc += F.at(k, n) * std::exp(complexd(0.0, kPi * g.xi(k) * g.x(i))) *
                 std::sin(n * kPi * g.y(j));
      out.at(i, j) = acc;
    }
  return out;
}

}  // namespace

TEST_CASE("grid conventions on a small cell") {
  Grid g{4.0, 8, 3};
  g.validate();

  CHECK(g.signed_mode(0) == 0);
  CHECK(g.signed_mode(3) == 3);
  CHECK(g.signed_mode(4) == -4);
  CHECK(g.signed_mode(7) == -1);
  CHECK(g.xi(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.xi(7) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(g.x(0) == doctest::Approx(-2.0));
  CHECK(g.x(4) == doctest::Approx(0.0));
  CHECK(g.y(0) == doctest::Approx(0.25));
  CHECK(g.y(2) == doctest::Approx(0.75));
  CHECK(g.dx() == doctest::Approx(0.5));
  CHECK(g.dy() == doctest::Approx(0.25));
  CHECK(g.omega(0, 1) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(g.omega(1, 2) == doctest::Approx(kPi * kPi * (0.25 + 4.0)).epsilon(1e-15));
  CHECK(g.cell_weight() == doctest::Approx(2.0));
  CHECK(g.size() == 24);
}

TEST_CASE("grid validation rejects bad shapes") {
  CHECK_THROWS_WITH_AS((Grid{16.0, 5, 4}.validate()), "Grid: N_x must be even and >= 4",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((Grid{16.0, 2, 4}.validate()), "Grid: N_x must be even and >= 4",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((Grid{16.0, 8, 0}.validate()), "Grid: N_y must be >= 1",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS((Grid{0.0, 8, 4}.validate()), "Grid: L_x must be positive",
                       std::invalid_argument);
  CHECK_NOTHROW((Grid{1.0, 4, 1}.validate()));
}

TEST_CASE("inverse transform matches the direct modal sum") {
  const Grid g{5.0, 16, 7};
  const SpectralField F = testutil::random_field(g, 42);
  const PhysicalField fast = inverse_transform(F);
  const PhysicalField slow = direct_synthesis(F);
  CHECK(testutil::max_abs_diff(fast.v, slow.v) < 1e-12 * testutil::max_abs(slow.v));
}

TEST_CASE("transform round trips are identities") {
  const Grid g{7.0, 12, 9};

  SUBCASE("coefficients -> values -> coefficients") {
    const SpectralField F = testutil::random_field(g, 7);
    const SpectralField back = forward_transform(inverse_transform(F));
    CHECK(back.grid == g);
    CHECK(testutil::max_abs_diff(back.c, F.c) < 1e-13 * testutil::max_abs(F.c));
  }

  SUBCASE("values -> coefficients -> values") {
    PhysicalField f(g);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (complexd& v : f.v) v = complexd(normal(rng), normal(rng));
    const PhysicalField back = inverse_transform(forward_transform(f));
    CHECK(testutil::max_abs_diff(back.v, f.v) < 1e-13 * testutil::max_abs(f.v));
  }
}

TEST_CASE("sampled single mode lands on a single coefficient") {
  const Grid g{16.0, 32, 10};
  const int m = -5, n = 4;
  const double xi = 2.0 * m / g.Lx;
  const PhysicalField f = PhysicalField::sample(g, [&](double x, double y) {
    return std::exp(complexd(0.0, kPi * xi * x)) * std::sin(n * kPi * y);
  });
  const SpectralField F = forward_transform(f);
  const int k = m + g.Nx;  // FFT storage slot of the negative mode
  CHECK(std::abs(F.at(k, n) - 1.0) < 1e-12);
  double off = 0.0;
  for (int kk = 0; kk < g.Nx; ++kk)
    for (int nn = 1; nn <= g.Ny; ++nn)
      if (kk != k || nn != n) off = std::max(off, std::abs(F.at(kk, nn)));
  CHECK(off < 1e-12);
}

TEST_CASE("Parseval: modal L2 equals collocation L2") {
  const Grid g{9.0, 16, 11};
  const SpectralField F = testutil::random_field(g, 3);
  const double modal = sobolev_norm(F, 0.0);
  const double nodal = l2_norm(inverse_transform(F));
  CHECK(modal == doctest::Approx(nodal).epsilon(1e-13));
}

TEST_CASE("dft_1d matches the O(M^2) definition") {
  const int M = 17;
  std::mt19937_64 rng(19);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<complexd> in(M), out(M), naive(M);
  for (complexd& v : in) v = complexd(normal(rng), normal(rng));
  dft_1d(in, out);
  for (int m = 0; m < M; ++m) {
    complexd acc = 0.0;
    for (int j = 0; j < M; ++j)
      acc += in[j] * std::exp(complexd(0.0, -2.0 * kPi * m * j / M));
    naive[m] = acc;
  }
  CHECK(testutil::max_abs_diff(out, naive) < 1e-12 * testutil::max_abs(naive));
}

TEST_CASE("dft_1d rejects bad spans") {
  std::vector<complexd> a(8), b(7);
  CHECK_THROWS_WITH_AS(dft_1d(a, b), "dft_1d: size mismatch", std::invalid_argument);
  CHECK_THROWS_WITH_AS(dft_1d(a, a), "dft_1d: in-place not supported", std::invalid_argument);
}

TEST_CASE("field accessors address the documented storage layout") {
  const Grid g{6.0, 6, 4};
  SpectralField F(g);
  F.at(2, 3) = complexd(1.5, -0.5);
  CHECK(F.c[std::size_t(2) * g.Ny + 2] == complexd(1.5, -0.5));
  PhysicalField f(g);
  f.at(5, 1) = complexd(0.25, 0.75);
  CHECK(f.v[std::size_t(5) * g.Ny + 1] == complexd(0.25, 0.75));
}
