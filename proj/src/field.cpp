#include "stripnls/field.hpp"

#include <cmath>
#include <stdexcept>

#include "stripnls/transforms.hpp"

namespace stripnls {

PhysicalField PhysicalField::sample(const Grid& g,
                                    const std::function<complexd(double, double)>& f) {
  PhysicalField out(g);
  for (int i = 0; i < g.Nx; ++i)
    for (int j = 0; j < g.Ny; ++j) out.at(i, j) = f(g.x(i), g.y(j));
  return out;
}

bool Trajectory::uniform(double rel_tol) const {
  if (t.size() < 3) return true;
  const double h = t[1] - t[0];
  for (std::size_t m = 1; m + 1 < t.size(); ++m)
    if (std::abs((t[m + 1] - t[m]) - h) > rel_tol * std::max(1.0, std::abs(h))) return false;
  return true;
}

void WindowSpec::validate() const {
  if (kind == Kind::smooth_bump && !(ramp_fraction > 0.0 && ramp_fraction <= 0.5))
    throw std::invalid_argument("WindowSpec: ramp_fraction must lie in (0, 0.5]");
}

namespace {
// C-infinity ramp: 0 for s <= 0, 1 for s >= 1.
double smooth_ramp(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s);
  const double b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}
}  // namespace

double WindowSpec::value(double t, double T) const {
  if (kind == Kind::none) return 1.0;
  validate();
  const double w = ramp_fraction * T;
  return smooth_ramp(t / w) * smooth_ramp((T - t) / w);
}

bool BoundaryData::is_zero() const {
  for (const complexd& z : xhat)
    if (z != complexd(0.0, 0.0)) return false;
  return true;
}

complexd BoundaryData::sample(int k, double t) const {
  if (xhat.empty()) return complexd(0.0, 0.0);
  if (M == 0) return xhat[k];
  const double step = dt();
  double s = t / step;
  if (s <= 0.0) return at(0, k);
  if (s >= M) return at(M, k);
  const int m = int(s);
  const double a = s - m;
  return (1.0 - a) * at(m, k) + a * at(m + 1, k);
}

BoundaryData BoundaryData::from_function(const Grid& g, double T, int M,
                                         const std::function<complexd(double, double)>& h,
                                         WindowSpec w) {
  BoundaryData out(g, T, M);
  out.window = w;
  // x-transform each time slice through the 2-D machinery's x-convention:
  // hhat_k = (1/Nx) sum_i h(x_i) e^{-i pi xi_k x_i}, evaluated directly.
  std::vector<complexd> slice(g.Nx), hat(g.Nx);
  for (int m = 0; m <= M; ++m) {
    const double t = (M == 0) ? 0.0 : m * (T / M);
    for (int i = 0; i < g.Nx; ++i) slice[i] = h(g.x(i), t);
    dft_1d(slice, hat);
    for (int k = 0; k < g.Nx; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // shift to x_0 = -L_x/2
      out.at(m, k) = sign * hat[k] / double(g.Nx);
    }
  }
  return out;
}

}  // namespace stripnls
