#include "stripnls/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace stripnls {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'S', 'S'};

void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(char((v >> (8 * b)) & 0xffu));
}

void put_f64(std::string& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out.push_back(char((bits >> (8 * b)) & 0xffu));
}

std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
  if (pos + 4 > in.size()) throw std::runtime_error("read_snapshot: truncated file");
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= std::uint32_t(std::uint8_t(in[pos + b])) << (8 * b);
  pos += 4;
  return v;
}

double get_f64(const std::string& in, std::size_t& pos) {
  if (pos + 8 > in.size()) throw std::runtime_error("read_snapshot: truncated file");
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= std::uint64_t(std::uint8_t(in[pos + b])) << (8 * b);
  pos += 8;
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& snap) {
  if (snap.data.size() != std::size_t(snap.nx) * snap.ny)
    throw std::runtime_error("write_snapshot: data size does not match nx*ny");
  std::string buf;
  buf.reserve(24 + 16 * snap.data.size());
  buf.append(kMagic, 4);
  put_u32(buf, snap.version);
  put_u32(buf, snap.nx);
  put_u32(buf, snap.ny);
  put_f64(buf, snap.Lx);
  for (const complexd& z : snap.data) {
    put_f64(buf, z.real());
    put_f64(buf, z.imag());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 4 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw std::runtime_error("read_snapshot: bad magic in " + path);
  std::size_t pos = 4;
  Snapshot snap;
  snap.version = get_u32(buf, pos);
  if (snap.version != kSnapshotSpectral && snap.version != kSnapshotFdNodes)
    throw std::runtime_error("read_snapshot: unknown version " + std::to_string(snap.version));
  snap.nx = get_u32(buf, pos);
  snap.ny = get_u32(buf, pos);
  snap.Lx = get_f64(buf, pos);
  const std::size_t count = std::size_t(snap.nx) * snap.ny;
  snap.data.resize(count);
  for (std::size_t q = 0; q < count; ++q) {
    const double re = get_f64(buf, pos);
    const double im = get_f64(buf, pos);
    snap.data[q] = complexd(re, im);
  }
  if (pos != buf.size()) throw std::runtime_error("read_snapshot: trailing bytes in " + path);
  return snap;
}

Snapshot to_snapshot(const SpectralField& F) {
  Snapshot snap;
  snap.version = kSnapshotSpectral;
  snap.nx = std::uint32_t(F.grid.Nx);
  snap.ny = std::uint32_t(F.grid.Ny);
  snap.Lx = F.grid.Lx;
  snap.data = F.c;
  return snap;
}

Snapshot to_snapshot(const FdField& u) {
  Snapshot snap;
  snap.version = kSnapshotFdNodes;
  snap.nx = std::uint32_t(u.grid.Mx);
  snap.ny = std::uint32_t(u.grid.My);
  snap.Lx = u.grid.Lx;
  snap.data = u.v;
  return snap;
}

SpectralField spectral_from_snapshot(const Snapshot& snap) {
  if (snap.version != kSnapshotSpectral)
    throw std::runtime_error("spectral_from_snapshot: snapshot is not spectral");
  Grid g{snap.Lx, int(snap.nx), int(snap.ny)};
  g.validate();
  SpectralField F(g);
  F.c = snap.data;
  return F;
}

FdField fd_from_snapshot(const Snapshot& snap, double dt) {
  if (snap.version != kSnapshotFdNodes)
    throw std::runtime_error("fd_from_snapshot: snapshot is not nodal");
  FdGrid g{snap.Lx, int(snap.nx), int(snap.ny), dt};
  g.validate();
  FdField u(g);
  u.v = snap.data;
  return u;
}

}  // namespace stripnls
