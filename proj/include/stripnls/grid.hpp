#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stripnls {

inline constexpr double kPi = 3.14159265358979323846;

using complexd = std::complex<double>;

/// Tensor grid for the periodic cell [-L_x/2, L_x/2) x (0,1).
///
/// x carries N_x equispaced points x_i = -L_x/2 + i*L_x/N_x and Fourier modes
/// e^{i pi xi_k x} with xi_k = 2k/L_x, k in [-N_x/2, N_x/2).  y carries N_y
/// interior sine nodes y_j = j/(N_y+1), j = 1..N_y, matching the Dirichlet
/// eigenfunctions sin(n pi y), n = 1..N_y.  Modes are stored with k in FFT
/// order (0,1,..,N_x/2-1,-N_x/2,..,-1) and n-1 = 0..N_y-1.
struct Grid {
  double Lx = 16.0;
  int Nx = 64;
  int Ny = 32;

  /// Throws std::invalid_argument unless N_x is even and >= 4, N_y >= 1, L_x > 0.
  void validate() const;

  /// Signed mode number for storage index k in [0, N_x).
  int signed_mode(int k) const { return k < Nx / 2 ? k : k - Nx; }

  /// x-frequency xi_k = 2 k / L_x (signed).
  double xi(int k) const { return 2.0 * signed_mode(k) / Lx; }

  double x(int i) const { return -0.5 * Lx + i * (Lx / Nx); }

  /// Interior node for storage index j in [0, N_y): y = (j+1)/(N_y+1).
  double y(int j) const { return (j + 1) / double(Ny + 1); }

  double dx() const { return Lx / Nx; }
  double dy() const { return 1.0 / (Ny + 1); }

  /// Dispersion symbol omega(k,n) = pi^2 (xi_k^2 + n^2) for sine mode n >= 1.
  double omega(int k, int n) const {
    const double xik = xi(k);
    return kPi * kPi * (xik * xik + double(n) * n);
  }

  /// Exact Parseval weight: ||u||_{L^2(cell)}^2 = cell_weight * sum |coeff|^2.
  double cell_weight() const { return 0.5 * Lx; }

  std::size_t size() const { return std::size_t(Nx) * std::size_t(Ny); }

  bool operator==(const Grid&) const = default;
};

}  // namespace stripnls
