#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stripnls/solver.hpp"

namespace stripnls {

/// Analytic-family description for one datum (initial state or one wall).
struct DataSpec {
  std::string family = "zero";        ///< zero | single-mode | gaussian-bump | snapshot
  double amplitude = 1.0;
  int mode_x = 1;                     ///< signed x mode
  int mode_y = 1;                     ///< sine mode (initial state only)
  double x0 = 0.0;                    ///< bump centre
  double width = 1.0;                 ///< bump width
  std::string tprofile = "constant";  ///< constant | ramp | sine | gauss-pulse
  double omega = 0.0;                 ///< sine time frequency
  double tcenter = 0.5;               ///< gauss-pulse centre
  double twidth = 0.1;                ///< gauss-pulse width
  int samples = 64;                   ///< stored boundary sample intervals
  std::string window = "none";        ///< none | smooth-bump (norm-side cut-off)
  double ramp_fraction = 0.1;
  std::string snapshot;               ///< path for family=snapshot
};

/// Fully resolved run description: config file plus --set/--seed overrides.
struct RunConfig {
  std::string command;  ///< solve | linear | estimates | sharpness | oracle-compare | diagnose
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int snapshot_every = 0;  ///< frame cadence for .nlss dumps; 0 = final state only

  double Lx = 16.0;
  int Nx = 64;
  int Ny = 32;
  double lambda = 0.0;
  double p = 3.0;
  double T = 1.0;
  double window_dt = 0.1;
  int substeps = 16;
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  double s_monitor = 1.0;
  double compat_warn_tol = 1e-6;
  bool dealias = false;

  DataSpec phi, h1, h2;

  std::string est_ops = "W0,W0-sup,Wb,duhamel";
  int est_ensemble = 100;
  double est_r = 4.0;
  double est_s = 0.0;
  double est_sigma = 0.75;
  double est_T = 1.0;
  int est_time_samples = 64;
  std::string est_family = "random-band-limited";
  double est_q = 4.0;

  bool has_sharp_beta = false;
  double sharp_beta = 1.5;
  int sharp_N_max = 100;
  double sharp_sigma = 0.25;

  int fd_Mx = 64;
  int fd_My = 33;
  double fd_dt = 0.0;  ///< 0 = use fd_stable_dt
  int fd_samples = 5;
};

/// Parses config text; diagnostics cite `name` plus the 1-based line number.
/// Throws std::runtime_error for unknown keys, malformed numbers, or (at the
/// end) missing required keys.
RunConfig parse_config_text(const std::string& text, const std::string& name);

/// Reads and parses a config file, then applies --set style overrides.
RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides = {});

/// Canonical key = value rendering of every field; parsing the output
/// reproduces the config (round-trip identity).
std::string serialize_config(const RunConfig& cfg);

/// Builds the solver scenario described by the config (validated).
Scenario build_scenario(const RunConfig& cfg);

/// Executes cfg.command and writes artifacts into cfg.out_dir.
/// Returns the process exit code: 0 success, 2 blow-up flagged, 1 error.
int run(const RunConfig& cfg);

}  // namespace stripnls
