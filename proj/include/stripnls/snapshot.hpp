#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stripnls/fd_oracle.hpp"
#include "stripnls/field.hpp"

namespace stripnls {

/// Version tag for spectral coefficient snapshots (interior modes only).
inline constexpr std::uint32_t kSnapshotSpectral = 1;
/// Version tag for finite-difference nodal snapshots (boundary rows included).
inline constexpr std::uint32_t kSnapshotFdNodes = 2;

/// In-memory image of a state snapshot file.
///
/// On disk: magic "NLSS", then version, nx, ny as little-endian u32, Lx as
/// little-endian f64, then nx*ny (re, im) f64 pairs in row-major order.
struct Snapshot {
  std::uint32_t version = kSnapshotSpectral;
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  double Lx = 0.0;
  std::vector<complexd> data;
};

/// Writes a snapshot; throws std::runtime_error on I/O failure.
void write_snapshot(const std::string& path, const Snapshot& snap);

/// Reads a snapshot; throws std::runtime_error on bad magic, unknown version,
/// or truncation.
Snapshot read_snapshot(const std::string& path);

/// Packs spectral coefficients (version 1; ny = interior sine mode count).
Snapshot to_snapshot(const SpectralField& F);

/// Packs finite-difference nodal values (version 2; all My rows).
Snapshot to_snapshot(const FdField& u);

/// Unpacks a version-1 snapshot onto its recorded grid.
SpectralField spectral_from_snapshot(const Snapshot& snap);

/// Unpacks a version-2 snapshot; dt is not stored and must come from config.
FdField fd_from_snapshot(const Snapshot& snap, double dt = 1e-4);

}  // namespace stripnls
