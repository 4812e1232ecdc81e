#include "stripnls/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace stripnls::kernels {

namespace {

// Fixed chunk count so reduction order never depends on the thread count.
constexpr std::size_t kChunks = 64;

struct Range {
  std::size_t lo, hi;
};

Range chunk_range(std::size_t n, std::size_t c) {
  return {n * c / kChunks, n * (c + 1) / kChunks};
}

double mag_sq(const complexd& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

double pow_half(double m2, double r) {
  if (r == 2.0) return m2;
  if (r == 4.0) return m2 * m2;
  if (r == 3.0) return m2 * std::sqrt(m2);
  return std::pow(m2, 0.5 * r);
}

}  // namespace

Exec& exec_mode() {
  static Exec mode = Exec::openmp;
  return mode;
}

void phase_multiply(std::span<const complexd> in, std::span<const complexd> phase,
                    std::span<complexd> out, Exec ex) {
  const std::ptrdiff_t n = std::ptrdiff_t(in.size());
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = phase[i] * in[i];
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = phase[i] * in[i];
  }
}

void phase_exp_multiply(std::span<const complexd> in, std::span<const double> omega, double t,
                        std::span<complexd> out, Exec ex) {
  const std::ptrdiff_t n = std::ptrdiff_t(in.size());
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double a = -omega[i] * t;
      out[i] = complexd(std::cos(a), std::sin(a)) * in[i];
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double a = -omega[i] * t;
      out[i] = complexd(std::cos(a), std::sin(a)) * in[i];
    }
  }
}

void power_nonlinearity(std::span<const complexd> u, double lambda, double p,
                        std::span<complexd> out, Exec ex) {
  const std::ptrdiff_t n = std::ptrdiff_t(u.size());
  const double e = 0.5 * (p - 2.0);
  auto body = [&](std::ptrdiff_t i) {
    const double m2 = mag_sq(u[i]);
    if (m2 == 0.0) {
      out[i] = complexd(0.0, 0.0);
      return;
    }
    double amp;
    if (p == 3.0)
      amp = std::sqrt(m2);
    else if (p == 4.0)
      amp = m2;
    else
      amp = std::pow(m2, e);
    out[i] = lambda * amp * u[i];
  };
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
  }
}

double weighted_sumsq(std::span<const complexd> x, std::span<const double> w, Exec ex) {
  const std::size_t n = x.size();
  double partial[kChunks] = {};
  auto body = [&](std::size_t c) {
    const Range r = chunk_range(n, c);
    double s = 0.0;
    if (w.empty())
      for (std::size_t i = r.lo; i < r.hi; ++i) s += mag_sq(x[i]);
    else
      for (std::size_t i = r.lo; i < r.hi; ++i) s += w[i] * mag_sq(x[i]);
    partial[c] = s;
  };
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kChunks); ++c) body(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < kChunks; ++c) body(c);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < kChunks; ++c) total += partial[c];
  return total;
}

double sum_abs_pow(std::span<const complexd> x, double r, Exec ex) {
  const std::size_t n = x.size();
  double partial[kChunks] = {};
  auto body = [&](std::size_t c) {
    const Range rg = chunk_range(n, c);
    double s = 0.0;
    for (std::size_t i = rg.lo; i < rg.hi; ++i) s += pow_half(mag_sq(x[i]), r);
    partial[c] = s;
  };
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kChunks); ++c) body(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < kChunks; ++c) body(c);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < kChunks; ++c) total += partial[c];
  return total;
}

double max_abs(std::span<const complexd> x, Exec ex) {
  const std::size_t n = x.size();
  double partial[kChunks] = {};
  auto body = [&](std::size_t c) {
    const Range r = chunk_range(n, c);
    double s = 0.0;
    for (std::size_t i = r.lo; i < r.hi; ++i) s = std::max(s, mag_sq(x[i]));
    partial[c] = s;
  };
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kChunks); ++c) body(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < kChunks; ++c) body(c);
  }
  double m = 0.0;
  for (std::size_t c = 0; c < kChunks; ++c) m = std::max(m, partial[c]);
  return std::sqrt(m);
}

void exp_product_sweep(std::span<complexd* const> out_frames,
                       std::span<const complexd* const> in_frames, std::size_t n_modes,
                       std::span<const complexd> decay, std::span<const complexd> wl,
                       std::span<const complexd> wr, std::span<const complexd> pref, Exec ex) {
  const std::size_t n_frames = in_frames.size();
  auto body = [&](std::size_t c) {
    const Range r = chunk_range(n_modes, c);
    for (std::size_t q = r.lo; q < r.hi; ++q) {
      complexd I(0.0, 0.0);
      complexd fprev = in_frames[0][q];
      out_frames[0][q] = complexd(0.0, 0.0);
      for (std::size_t m = 0; m + 1 < n_frames; ++m) {
        const complexd fnext = in_frames[m + 1][q];
        I = decay[q] * I + wl[q] * fprev + wr[q] * fnext;
        out_frames[m + 1][q] = pref[q] * I;
        fprev = fnext;
      }
    }
  };
  if (ex == Exec::openmp) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(kChunks); ++c) body(std::size_t(c));
  } else {
    for (std::size_t c = 0; c < kChunks; ++c) body(c);
  }
}

}  // namespace stripnls::kernels
