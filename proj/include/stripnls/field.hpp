#pragma once

#include <functional>
#include <vector>

#include "stripnls/grid.hpp"

namespace stripnls {

/// Modal representation: u(x,y) = sum_{k,n} c(k,n) e^{i pi xi_k x} sin(n pi y).
/// Storage row-major over (k, n-1).
struct SpectralField {
  Grid grid;
  std::vector<complexd> c;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), c(g.size()) {}

  complexd& at(int k, int n) { return c[std::size_t(k) * grid.Ny + (n - 1)]; }
  const complexd& at(int k, int n) const { return c[std::size_t(k) * grid.Ny + (n - 1)]; }
};

/// Collocation values u(x_i, y_j) on the interior tensor grid, row-major over (i, j).
struct PhysicalField {
  Grid grid;
  std::vector<complexd> v;

  PhysicalField() = default;
  explicit PhysicalField(const Grid& g) : grid(g), v(g.size()) {}

  complexd& at(int i, int j) { return v[std::size_t(i) * grid.Ny + j]; }
  const complexd& at(int i, int j) const { return v[std::size_t(i) * grid.Ny + j]; }

  /// Fills values from a callable f(x, y).
  static PhysicalField sample(const Grid& g, const std::function<complexd(double, double)>& f);
};

/// Time-indexed spectral fields sharing one grid.
struct Trajectory {
  std::vector<double> t;
  std::vector<SpectralField> f;

  std::size_t steps() const { return t.size(); }
  bool empty() const { return t.empty(); }
  const Grid& grid() const { return f.front().grid; }

  /// True when sample times are equispaced to relative tolerance.
  bool uniform(double rel_tol = 1e-9) const;
  double dt() const { return t.size() > 1 ? t[1] - t[0] : 0.0; }
};

/// Smooth cut-off in time used before forming (xi, lambda) spectra.
struct WindowSpec {
  enum class Kind { none, smooth_bump };
  Kind kind = Kind::smooth_bump;
  double ramp_fraction = 0.1;

  void validate() const;

  /// Window value at t in [0, T]: C-infinity ramps of width ramp_fraction*T at
  /// both ends, identically 1 in between, 0 at the endpoints.
  double value(double t, double T) const;
};

/// Boundary trace h(x,t) as time samples of x-Fourier coefficients
/// hhat(xi_k, t_m) on the uniform grid t_m = m*T/M, m = 0..M.
struct BoundaryData {
  Grid grid;
  double T = 1.0;
  int M = 0;
  std::vector<complexd> xhat;  // index m*Nx + k
  WindowSpec window;

  BoundaryData() = default;
  BoundaryData(const Grid& g, double T_, int M_)
      : grid(g), T(T_), M(M_), xhat(std::size_t(M_ + 1) * g.Nx) {}

  double dt() const { return T / M; }
  double time(int m) const { return m * (T / M); }
  complexd& at(int m, int k) { return xhat[std::size_t(m) * grid.Nx + k]; }
  const complexd& at(int m, int k) const { return xhat[std::size_t(m) * grid.Nx + k]; }

  bool is_zero() const;

  /// hhat(xi_k, t) by linear interpolation in t (clamped to [0, T]).
  complexd sample(int k, double t) const;

  /// Fills samples from a callable h(x, t) by x-transforming each time slice.
  static BoundaryData from_function(const Grid& g, double T, int M,
                                    const std::function<complexd(double, double)>& h,
                                    WindowSpec w = {});
};

}  // namespace stripnls
