#include "stripnls/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stripnls/csv.hpp"
#include "stripnls/diagnostics.hpp"
#include "stripnls/estimates.hpp"
#include "stripnls/fd_oracle.hpp"
#include "stripnls/norms.hpp"
#include "stripnls/snapshot.hpp"
#include "stripnls/transforms.hpp"

namespace stripnls {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

double parse_double(const std::string& origin, const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (v.empty() || end != begin + v.size())
    fail(origin, "malformed number '" + v + "' for key '" + key + "'");
  return x;
}

long long parse_int(const std::string& origin, const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long long x = std::strtoll(begin, &end, 10);
  if (v.empty() || end != begin + v.size())
    fail(origin, "malformed number '" + v + "' for key '" + key + "'");
  return x;
}

bool parse_bool(const std::string& origin, const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(origin, "malformed boolean '" + v + "' for key '" + key + "'");
}

/// Applies one key; throws on unknown keys or malformed values.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& origin) {
  auto d = [&] { return parse_double(origin, key, value); };
  auto i = [&] { return int(parse_int(origin, key, value)); };

  if (key == "Lx") cfg.Lx = d();
  else if (key == "Nx") cfg.Nx = i();
  else if (key == "Ny") cfg.Ny = i();
  else if (key == "lambda") cfg.lambda = d();
  else if (key == "p") cfg.p = d();
  else if (key == "T") cfg.T = d();
  else if (key == "window_dt") cfg.window_dt = d();
  else if (key == "substeps") cfg.substeps = i();
  else if (key == "picard_tol") cfg.picard_tol = d();
  else if (key == "picard_max_iter") cfg.picard_max_iter = i();
  else if (key == "s_monitor") cfg.s_monitor = d();
  else if (key == "compat_warn_tol") cfg.compat_warn_tol = d();
  else if (key == "dealias") cfg.dealias = parse_bool(origin, key, value);
  else if (key == "seed") cfg.seed = std::uint64_t(parse_int(origin, key, value));
  else if (key == "snapshot_every") cfg.snapshot_every = i();
  else if (key.rfind("phi.", 0) == 0 || key.rfind("h1.", 0) == 0 || key.rfind("h2.", 0) == 0) {
    const std::size_t dot = key.find('.');
    const std::string head = key.substr(0, dot), tail = key.substr(dot + 1);
    DataSpec& ds = head == "phi" ? cfg.phi : (head == "h1" ? cfg.h1 : cfg.h2);
    if (tail == "family") ds.family = value;
    else if (tail == "amplitude") ds.amplitude = d();
    else if (tail == "mode_x") ds.mode_x = i();
    else if (tail == "mode_y") ds.mode_y = i();
    else if (tail == "x0") ds.x0 = d();
    else if (tail == "width") ds.width = d();
    else if (tail == "tprofile") ds.tprofile = value;
    else if (tail == "omega") ds.omega = d();
    else if (tail == "tcenter") ds.tcenter = d();
    else if (tail == "twidth") ds.twidth = d();
    else if (tail == "samples") ds.samples = i();
    else if (tail == "window") ds.window = value;
    else if (tail == "ramp_fraction") ds.ramp_fraction = d();
    else if (tail == "snapshot") ds.snapshot = value;
    else fail(origin, "unknown key '" + key + "'");
  } else if (key == "est.ops") cfg.est_ops = value;
  else if (key == "est.ensemble") cfg.est_ensemble = i();
  else if (key == "est.r") cfg.est_r = d();
  else if (key == "est.s") cfg.est_s = d();
  else if (key == "est.sigma") cfg.est_sigma = d();
  else if (key == "est.T") cfg.est_T = d();
  else if (key == "est.time_samples") cfg.est_time_samples = i();
  else if (key == "est.family") cfg.est_family = value;
  else if (key == "est.q") cfg.est_q = d();
  else if (key == "sharp.beta") { cfg.sharp_beta = d(); cfg.has_sharp_beta = true; }
  else if (key == "sharp.N_max") cfg.sharp_N_max = i();
  else if (key == "sharp.sigma") cfg.sharp_sigma = d();
  else if (key == "fd.Mx") cfg.fd_Mx = i();
  else if (key == "fd.My") cfg.fd_My = i();
  else if (key == "fd.dt") cfg.fd_dt = d();
  else if (key == "fd.samples") cfg.fd_samples = i();
  else fail(origin, "unknown key '" + key + "'");
}

std::string compact_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

WindowSpec window_from(const DataSpec& ds, const std::string& who) {
  WindowSpec w;
  if (ds.window == "none") w.kind = WindowSpec::Kind::none;
  else if (ds.window == "smooth-bump") w.kind = WindowSpec::Kind::smooth_bump;
  else throw std::runtime_error(who + ": unknown window '" + ds.window + "'");
  w.ramp_fraction = ds.ramp_fraction;
  return w;
}

SpectralField phi_from(const RunConfig& cfg, const Grid& g) {
  const DataSpec& ds = cfg.phi;
  if (ds.family == "zero") return SpectralField();
  if (ds.family == "single-mode") {
    if (ds.mode_x < -g.Nx / 2 || ds.mode_x > g.Nx / 2 - 1)
      throw std::runtime_error("phi: mode_x out of range for Nx");
    if (ds.mode_y < 1 || ds.mode_y > g.Ny)
      throw std::runtime_error("phi: mode_y out of range for Ny");
    SpectralField F(g);
    F.at(ds.mode_x >= 0 ? ds.mode_x : ds.mode_x + g.Nx, ds.mode_y) = ds.amplitude;
    return F;
  }
  if (ds.family == "gaussian-bump") {
    const PhysicalField f = PhysicalField::sample(g, [&](double x, double y) {
      const double env = std::exp(-(x - ds.x0) * (x - ds.x0) / (ds.width * ds.width));
      return complexd(ds.amplitude * env * std::sin(ds.mode_y * kPi * y), 0.0);
    });
    return forward_transform(f);
  }
  if (ds.family == "snapshot") {
    if (ds.snapshot.empty())
      throw std::runtime_error("phi: missing required key 'phi.snapshot'");
    SpectralField F = spectral_from_snapshot(read_snapshot(ds.snapshot));
    if (F.grid.Nx != g.Nx || F.grid.Ny != g.Ny || F.grid.Lx != g.Lx)
      throw std::runtime_error("phi: snapshot grid does not match configured grid");
    return F;
  }
  throw std::runtime_error("phi: unknown family '" + ds.family + "'");
}

BoundaryData boundary_from(const RunConfig& cfg, const DataSpec& ds, const Grid& g,
                           const std::string& who) {
  if (ds.family == "zero") return BoundaryData();
  std::function<complexd(double)> xprof;
  if (ds.family == "single-mode") {
    if (ds.mode_x < -g.Nx / 2 || ds.mode_x > g.Nx / 2 - 1)
      throw std::runtime_error(who + ": mode_x out of range for Nx");
    const double xi = 2.0 * ds.mode_x / g.Lx;
    const double amp = ds.amplitude;
    xprof = [xi, amp](double x) { return amp * std::exp(complexd(0.0, kPi * xi * x)); };
  } else if (ds.family == "gaussian-bump") {
    const double x0 = ds.x0, w = ds.width, amp = ds.amplitude;
    xprof = [x0, w, amp](double x) {
      return complexd(amp * std::exp(-(x - x0) * (x - x0) / (w * w)), 0.0);
    };
  } else {
    throw std::runtime_error(who + ": unknown family '" + ds.family + "'");
  }
  std::function<double(double)> tprof;
  if (ds.tprofile == "constant") tprof = [](double) { return 1.0; };
  else if (ds.tprofile == "ramp") {
    const double T = cfg.T;
    tprof = [T](double t) { return t / T; };
  } else if (ds.tprofile == "sine") {
    const double om = ds.omega;
    tprof = [om](double t) { return std::sin(om * t); };
  } else if (ds.tprofile == "gauss-pulse") {
    const double tc = ds.tcenter, tw = ds.twidth;
    tprof = [tc, tw](double t) { return std::exp(-(t - tc) * (t - tc) / (tw * tw)); };
  } else {
    throw std::runtime_error(who + ": unknown tprofile '" + ds.tprofile + "'");
  }
  if (ds.samples < 2) throw std::runtime_error(who + ": samples must be >= 2");
  return BoundaryData::from_function(
      g, cfg.T, ds.samples, [&](double x, double t) { return xprof(x) * tprof(t); },
      window_from(ds, who));
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

/// Accumulates report.txt: header, resolved config, result lines.
class Report {
 public:
  explicit Report(const RunConfig& cfg) {
    text_ += "strip-nls report\n";
    text_ += "command: " + cfg.command + "\n";
    text_ += "\n[resolved config]\n";
    text_ += serialize_config(cfg);
    text_ += "\n[results]\n";
  }
  void kv(const std::string& k, const std::string& v) { text_ += k + ": " + v + "\n"; }
  void kv(const std::string& k, double v) { kv(k, format_sci(v)); }
  void kv(const std::string& k, long long v) { kv(k, std::to_string(v)); }
  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("report: cannot open " + path);
    out << text_;
  }

 private:
  std::string text_;
};

void write_balance_csv(const std::string& path, const BalanceReport& rep) {
  CsvWriter w(path);
  w.header({"t", "mass", "energy", "mass_residual", "energy_residual", "trace_margin",
            "h1_norm"});
  const double nan = std::nan("");
  for (std::size_t m = 0; m < rep.t.size(); ++m) {
    const double margin = rep.trace_margin.empty() ? nan : rep.trace_margin[m];
    w.row({rep.t[m], rep.mass[m], rep.energy[m], rep.mass_residual[m],
           rep.energy_residual[m], margin, rep.h1_norm[m]});
  }
}

std::string frame_name(std::size_t m) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "state_%05zu.nlss", m);
  return buf;
}

int run_solve(const RunConfig& cfg) {
  Scenario scn = build_scenario(cfg);
  if (cfg.command == "linear") scn.lambda = 0.0;
  const auto [traj, rep] = march(scn);

  CsvWriter norms(cfg.out_dir + "/norms.csv");
  norms.header({"t", "l2", "hs", "l4_running"});
  for (std::size_t m = 0; m < rep.t_series.size(); ++m)
    norms.row({rep.t_series[m], rep.l2_series[m], rep.hs_series[m], rep.l4_running[m]});

  write_balance_csv(cfg.out_dir + "/balance.csv", balance_report(traj, scn));

  if (cfg.snapshot_every > 0)
    for (std::size_t m = 0; m < traj.steps(); m += std::size_t(cfg.snapshot_every))
      write_snapshot(cfg.out_dir + "/" + frame_name(m), to_snapshot(traj.f[m]));
  write_snapshot(cfg.out_dir + "/final.nlss", to_snapshot(traj.f.back()));

  Report r(cfg);
  r.kv("windows", (long long)rep.windows.size());
  r.kv("total_iterations", (long long)rep.total_iterations);
  double rho_max = 0.0;
  bool rho_seen = false;
  for (const WindowRecord& w : rep.windows)
    if (w.rho_valid) {
      rho_max = std::max(rho_max, w.rho);
      rho_seen = true;
    }
  r.kv("rho_max", rho_seen ? format_sci(rho_max) : std::string("n/a"));
  r.kv("r0", rep.r0);
  r.kv("r1", rep.r1);
  r.kv("compat_warning", rep.compat_warning ? "yes" : "no");
  r.kv("mu", rep.mu);
  r.kv("theta_r", rep.theta_r);
  r.kv("sup_l2", *std::max_element(rep.l2_series.begin(), rep.l2_series.end()));
  r.kv("sup_hs", *std::max_element(rep.hs_series.begin(), rep.hs_series.end()));
  r.kv("blowup", rep.blowup ? format_sci(rep.blowup_time) : std::string("none"));
  r.save(cfg.out_dir + "/report.txt");
  return rep.blowup ? 2 : 0;
}

int run_estimates(const RunConfig& cfg) {
  EstimateConfig ec;
  ec.grid = Grid{cfg.Lx, cfg.Nx, cfg.Ny};
  ec.ensemble_size = cfg.est_ensemble;
  ec.seed = cfg.seed;
  ec.r = cfg.est_r;
  ec.s = cfg.est_s;
  ec.sigma = cfg.est_sigma;
  ec.T = cfg.est_T;
  ec.time_samples = cfg.est_time_samples;
  if (cfg.est_family == "random-band-limited")
    ec.family = EstimateConfig::Family::random_band_limited;
  else if (cfg.est_family == "gaussian-bump")
    ec.family = EstimateConfig::Family::gaussian_bump;
  else if (cfg.est_family == "single-mode")
    ec.family = EstimateConfig::Family::single_mode;
  else
    throw std::runtime_error("estimates: unknown family '" + cfg.est_family + "'");

  Report r(cfg);
  const std::vector<std::string> ops = split_csv_list(cfg.est_ops);
  if (ops.empty()) throw std::runtime_error("estimates: est.ops is empty");
  for (const std::string& op : ops) {
    RatioStats st;
    if (op == "W0") st = ratio_W0(ec, W0Variant::strichartz);
    else if (op == "W0-sup") st = ratio_W0(ec, W0Variant::sup_hs);
    else if (op == "Wb") st = ratio_Wb(ec);
    else if (op == "duhamel") st = ratio_duhamel(ec, cfg.est_q);
    else throw std::runtime_error("estimates: unknown op '" + op + "'");
    const std::string fname = "ratios_" + op + "_r" + compact_num(ec.r) + "_s" +
                              compact_num(ec.s) + "_sigma" + compact_num(ec.sigma) + ".csv";
    CsvWriter w(cfg.out_dir + "/" + fname);
    w.header({"sample_id", "lhs_norm", "rhs_norm", "ratio"});
    for (std::size_t i = 0; i < st.ratio.size(); ++i)
      w.raw_row({std::to_string(i), format_sci(st.lhs[i]), format_sci(st.rhs[i]),
                 format_sci(st.ratio[i])});
    r.kv("ratio_" + op + "_resolution", st.resolution);
    r.kv("ratio_" + op + "_max", st.max);
    r.kv("ratio_" + op + "_mean", st.mean);
  }
  r.save(cfg.out_dir + "/report.txt");
  return 0;
}

int run_sharpness(const RunConfig& cfg) {
  if (!cfg.has_sharp_beta)
    throw std::runtime_error("sharpness: missing required key 'sharp.beta'");
  const SharpnessCurve curve = sharpness_probe(cfg.sharp_beta, cfg.sharp_N_max, cfg.sharp_sigma);
  CsvWriter w(cfg.out_dir + "/sharpness.csv");
  w.header({"N", "lhs_norm", "rhs_norm", "ratio"});
  for (std::size_t i = 0; i < curve.N.size(); ++i)
    w.raw_row({std::to_string(curve.N[i]), format_sci(curve.lhs[i]),
               format_sci(curve.rhs[i]), format_sci(curve.ratio[i])});
  Report r(cfg);
  r.kv("beta", cfg.sharp_beta);
  r.kv("sigma", cfg.sharp_sigma);
  r.kv("N_max", (long long)cfg.sharp_N_max);
  r.kv("ratio_first", curve.ratio.front());
  r.kv("ratio_last", curve.ratio.back());
  r.save(cfg.out_dir + "/report.txt");
  return 0;
}

int run_oracle(const RunConfig& cfg) {
  Scenario scn = build_scenario(cfg);
  const auto [traj, rep] = march(scn);

  FdGrid fg{cfg.Lx, cfg.fd_Mx, cfg.fd_My, 1e-4};
  fg.dt = cfg.fd_dt > 0.0 ? cfg.fd_dt : fd_stable_dt(fg);
  if (cfg.fd_samples < 1) throw std::runtime_error("oracle-compare: fd.samples must be >= 1");

  // Compare at recorded spectral frames nearest to a uniform grid over [0, T].
  std::vector<double> times;
  for (int j = 0; j <= cfg.fd_samples; ++j) {
    const double want = scn.T * j / cfg.fd_samples;
    std::size_t best = 0;
    for (std::size_t m = 1; m < traj.steps(); ++m)
      if (std::abs(traj.t[m] - want) < std::abs(traj.t[best] - want)) best = m;
    if (times.empty() || traj.t[best] > times.back()) times.push_back(traj.t[best]);
  }

  const FdTrajectory fd = cn_solve(scn, fg, times);
  const std::vector<CompareRow> rows = compare(traj, fd, times);

  CsvWriter w(cfg.out_dir + "/oracle.csv");
  w.header({"t", "l2_diff", "linf_diff"});
  double maxl2 = 0.0;
  for (const CompareRow& row : rows) {
    w.row({row.t, row.l2, row.linf});
    maxl2 = std::max(maxl2, row.l2);
  }
  write_snapshot(cfg.out_dir + "/fd_final.nlss", to_snapshot(fd.f.back()));

  Report r(cfg);
  r.kv("fd_Mx", (long long)fg.Mx);
  r.kv("fd_My", (long long)fg.My);
  r.kv("fd_dt", fg.dt);
  r.kv("max_l2_diff", maxl2);
  r.kv("blowup", rep.blowup ? format_sci(rep.blowup_time) : std::string("none"));
  r.save(cfg.out_dir + "/report.txt");
  return rep.blowup ? 2 : 0;
}

int run_diagnose(const RunConfig& cfg) {
  Scenario scn = build_scenario(cfg);
  const auto [traj, rep] = march(scn);
  const BalanceReport bal = balance_report(traj, scn);
  write_balance_csv(cfg.out_dir + "/balance.csv", bal);
  const H1GrowthTable growth = h1_growth_monitor(traj, scn);

  Report r(cfg);
  r.kv("sup_h1", growth.sup_h1);
  r.kv("t_at_sup", growth.t_at_sup);
  r.kv("phi_h1", growth.phi_h1);
  r.kv("h1_data_norm", growth.h1_data_norm);
  r.kv("h2_data_norm", growth.h2_data_norm);
  double max_mass_res = 0.0, max_energy_res = 0.0;
  for (std::size_t m = 0; m < bal.t.size(); ++m) {
    max_mass_res = std::max(max_mass_res, std::abs(bal.mass_residual[m]));
    max_energy_res = std::max(max_energy_res, std::abs(bal.energy_residual[m]));
  }
  r.kv("max_mass_residual", max_mass_res);
  r.kv("max_energy_residual", max_energy_res);
  if (!bal.trace_margin.empty()) {
    double min_margin = bal.trace_margin.front();
    for (double v : bal.trace_margin) min_margin = std::min(min_margin, v);
    r.kv("min_trace_margin", min_margin);
  } else {
    r.kv("min_trace_margin", std::string("n/a"));
  }
  r.kv("blowup", rep.blowup ? format_sci(rep.blowup_time) : std::string("none"));
  r.save(cfg.out_dir + "/report.txt");
  return rep.blowup ? 2 : 0;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = name + ":" + std::to_string(lineno);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(origin, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, "expected key = value");
    apply_key(cfg, key, value, origin);
  }
  if (cfg.phi.family == "snapshot" && cfg.phi.snapshot.empty())
    fail(name, "missing required key 'phi.snapshot'");
  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  RunConfig cfg = parse_config_text(text, path);
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const std::string origin = "--set[" + std::to_string(i + 1) + "]";
    const std::size_t eq = overrides[i].find('=');
    if (eq == std::string::npos) fail(origin, "expected key=value");
    apply_key(cfg, trim(overrides[i].substr(0, eq)), trim(overrides[i].substr(eq + 1)), origin);
  }
  return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string s;
  auto add = [&s](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
  auto addd = [&](const std::string& k, double v) { add(k, format_sci(v)); };
  auto addi = [&](const std::string& k, long long v) { add(k, std::to_string(v)); };
  auto addb = [&](const std::string& k, bool v) { add(k, v ? "true" : "false"); };
  auto add_data = [&](const std::string& p, const DataSpec& ds, bool is_phi) {
    add(p + ".family", ds.family);
    addd(p + ".amplitude", ds.amplitude);
    addi(p + ".mode_x", ds.mode_x);
    if (is_phi) addi(p + ".mode_y", ds.mode_y);
    addd(p + ".x0", ds.x0);
    addd(p + ".width", ds.width);
    if (is_phi) {
      add(p + ".snapshot", ds.snapshot);
    } else {
      add(p + ".tprofile", ds.tprofile);
      addd(p + ".omega", ds.omega);
      addd(p + ".tcenter", ds.tcenter);
      addd(p + ".twidth", ds.twidth);
      addi(p + ".samples", ds.samples);
      add(p + ".window", ds.window);
      addd(p + ".ramp_fraction", ds.ramp_fraction);
    }
  };

  addd("Lx", cfg.Lx);
  addi("Nx", cfg.Nx);
  addi("Ny", cfg.Ny);
  addd("lambda", cfg.lambda);
  addd("p", cfg.p);
  addd("T", cfg.T);
  addd("window_dt", cfg.window_dt);
  addi("substeps", cfg.substeps);
  addd("picard_tol", cfg.picard_tol);
  addi("picard_max_iter", cfg.picard_max_iter);
  addd("s_monitor", cfg.s_monitor);
  addd("compat_warn_tol", cfg.compat_warn_tol);
  addb("dealias", cfg.dealias);
  addi("seed", (long long)cfg.seed);
  addi("snapshot_every", cfg.snapshot_every);
  add_data("phi", cfg.phi, true);
  add_data("h1", cfg.h1, false);
  add_data("h2", cfg.h2, false);
  add("est.ops", cfg.est_ops);
  addi("est.ensemble", cfg.est_ensemble);
  addd("est.r", cfg.est_r);
  addd("est.s", cfg.est_s);
  addd("est.sigma", cfg.est_sigma);
  addd("est.T", cfg.est_T);
  addi("est.time_samples", cfg.est_time_samples);
  add("est.family", cfg.est_family);
  addd("est.q", cfg.est_q);
  addd("sharp.beta", cfg.sharp_beta);
  addi("sharp.N_max", cfg.sharp_N_max);
  addd("sharp.sigma", cfg.sharp_sigma);
  addi("fd.Mx", cfg.fd_Mx);
  addi("fd.My", cfg.fd_My);
  addd("fd.dt", cfg.fd_dt);
  addi("fd.samples", cfg.fd_samples);
  return s;
}

Scenario build_scenario(const RunConfig& cfg) {
  Scenario scn;
  scn.grid = Grid{cfg.Lx, cfg.Nx, cfg.Ny};
  scn.grid.validate();
  scn.lambda = cfg.lambda;
  scn.p = cfg.p;
  scn.T = cfg.T;
  scn.window_dt = cfg.window_dt;
  scn.substeps = cfg.substeps;
  scn.picard_tol = cfg.picard_tol;
  scn.picard_max_iter = cfg.picard_max_iter;
  scn.s_monitor = cfg.s_monitor;
  scn.compat_warn_tol = cfg.compat_warn_tol;
  scn.dealias = cfg.dealias;
  scn.phi = phi_from(cfg, scn.grid);
  scn.h1 = boundary_from(cfg, cfg.h1, scn.grid, "h1");
  scn.h2 = boundary_from(cfg, cfg.h2, scn.grid, "h2");
  scn.validate();
  return scn;
}

int run(const RunConfig& cfg) {
  try {
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.command == "solve" || cfg.command == "linear") return run_solve(cfg);
    if (cfg.command == "estimates") return run_estimates(cfg);
    if (cfg.command == "sharpness") return run_sharpness(cfg);
    if (cfg.command == "oracle-compare") return run_oracle(cfg);
    if (cfg.command == "diagnose") return run_diagnose(cfg);
    throw std::runtime_error("unknown command '" + cfg.command + "'");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "strip-nls: error: %s\n", e.what());
    return 1;
  }
}

}  // namespace stripnls
