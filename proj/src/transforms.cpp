#include "stripnls/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace stripnls {

namespace {

std::mutex g_plan_mutex;

struct PlanSet {
  fftw_plan x_fwd = nullptr;
  fftw_plan x_bwd = nullptr;
  fftw_plan y_dst = nullptr;  // DST-I on interleaved re/im, one x-column
  std::vector<complexd> scratch;
};

PlanSet& plans_for(int Nx, int Ny) {
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  static std::map<std::pair<int, int>, PlanSet> cache;
  const auto key = std::make_pair(Nx, Ny);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  PlanSet ps;
  ps.scratch.resize(std::size_t(Nx) * Ny);
  auto* buf = reinterpret_cast<fftw_complex*>(ps.scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  ps.x_fwd = fftw_plan_many_dft(1, &Nx, Ny, buf, nullptr, Ny, 1, buf, nullptr, Ny, 1,
                                FFTW_FORWARD, flags);
  ps.x_bwd = fftw_plan_many_dft(1, &Nx, Ny, buf, nullptr, Ny, 1, buf, nullptr, Ny, 1,
                                FFTW_BACKWARD, flags);
  auto* dbuf = reinterpret_cast<double*>(ps.scratch.data());
  fftw_r2r_kind kind = FFTW_RODFT00;
  ps.y_dst =
      fftw_plan_many_r2r(1, &Ny, 2, dbuf, nullptr, 2, 1, dbuf, nullptr, 2, 1, &kind, flags);
  return cache.emplace(key, std::move(ps)).first->second;
}

void dst_all_columns(const PlanSet& ps, complexd* data, int Nx, int Ny) {
  for (int i = 0; i < Nx; ++i)
    fftw_execute_r2r(ps.y_dst, reinterpret_cast<double*>(data + std::size_t(i) * Ny),
                     reinterpret_cast<double*>(data + std::size_t(i) * Ny));
}

}  // namespace

SpectralField forward_transform(const PhysicalField& f) {
  f.grid.validate();
  const int Nx = f.grid.Nx, Ny = f.grid.Ny;
  if (f.v.size() != f.grid.size()) throw std::invalid_argument("forward_transform: size mismatch");
  PlanSet& ps = plans_for(Nx, Ny);

  SpectralField F(f.grid);
  F.c = f.v;
  // DST-I in y: B'_n = (2/(Ny+1)) sum_j u_j sin(n pi y_j); RODFT00 returns 2*sum.
  dst_all_columns(ps, F.c.data(), Nx, Ny);
  const double ynorm = 1.0 / double(Ny + 1);
  for (complexd& z : F.c) z *= ynorm;
  // x-FFT with the shift to x_0 = -L_x/2: uhat_k = (-1)^k (1/Nx) sum_i u_i e^{-2 pi i k i/Nx}.
  fftw_execute_dft(ps.x_fwd, reinterpret_cast<fftw_complex*>(F.c.data()),
                   reinterpret_cast<fftw_complex*>(F.c.data()));
  const double xnorm = 1.0 / double(Nx);
  for (int k = 0; k < Nx; ++k) {
    const double s = (k % 2 == 0 ? xnorm : -xnorm);
    for (int n = 0; n < Ny; ++n) F.c[std::size_t(k) * Ny + n] *= s;
  }
  return F;
}

PhysicalField inverse_transform(const SpectralField& F) {
  F.grid.validate();
  const int Nx = F.grid.Nx, Ny = F.grid.Ny;
  if (F.c.size() != F.grid.size()) throw std::invalid_argument("inverse_transform: size mismatch");
  PlanSet& ps = plans_for(Nx, Ny);

  PhysicalField f(F.grid);
  f.v = F.c;
  for (int k = 0; k < Nx; ++k) {
    if (k % 2 == 0) continue;
    for (int n = 0; n < Ny; ++n) f.v[std::size_t(k) * Ny + n] = -f.v[std::size_t(k) * Ny + n];
  }
  fftw_execute_dft(ps.x_bwd, reinterpret_cast<fftw_complex*>(f.v.data()),
                   reinterpret_cast<fftw_complex*>(f.v.data()));
  // Sine synthesis: u_j = sum_n B_n sin(n pi y_j) = RODFT00(B)/2.
  dst_all_columns(ps, f.v.data(), Nx, Ny);
  for (complexd& z : f.v) z *= 0.5;
  return f;
}

void dft_1d(std::span<const complexd> in, std::span<complexd> out) {
  if (in.size() != out.size()) throw std::invalid_argument("dft_1d: size mismatch");
  if (in.data() == out.data()) throw std::invalid_argument("dft_1d: in-place not supported");
  const int M = int(in.size());
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  static std::map<int, std::pair<fftw_plan, std::vector<complexd>>> cache;
  auto it = cache.find(M);
  if (it == cache.end()) {
    std::vector<complexd> scratch(2 * std::size_t(M));
    auto* a = reinterpret_cast<fftw_complex*>(scratch.data());
    auto* b = a + M;
    fftw_plan p = fftw_plan_dft_1d(M, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    it = cache.emplace(M, std::make_pair(p, std::move(scratch))).first;
  }
  fftw_execute_dft(it->second.first,
                   reinterpret_cast<fftw_complex*>(const_cast<complexd*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace stripnls
