#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "stripnls/solver.hpp"

namespace stripnls {

/// Shared knobs for the ratio ensembles.  sigma enters the W0 time-factor
/// T^{1/2} + T^{1/2-sigma} and must exceed 1/2 there; theta_r = 1/r - 1/4 is
/// carried for reporting only.
struct EstimateConfig {
  Grid grid;
  int ensemble_size = 100;
  std::uint64_t seed = 1;
  double r = 4.0;
  double s = 0.0;
  double sigma = 0.75;
  double T = 1.0;
  int time_samples = 64;

  enum class Family { random_band_limited, gaussian_bump, single_mode };
  Family family = Family::random_band_limited;

  double theta_r() const { return 1.0 / r - 0.25; }
  void validate() const;
};

/// Per-sample norms and ratios plus order-independent summary stats.
struct RatioStats {
  std::vector<double> lhs, rhs, ratio;
  double max = 0.0;
  double mean = 0.0;
  std::string resolution;
};

/// iid complex Gaussian coefficients on the band |mode| <= 2/3 Nyquist in both
/// directions, scaled to unit H^0 norm.  Deterministic given the rng state.
SpectralField random_band_limited(const Grid& g, std::mt19937_64& rng);

enum class W0Variant { strichartz, sup_hs };

/// Free-flow ratios over the data ensemble:
///   strichartz: ||W0 phi||_{L^r_t W^{s,r}} / [(T^{1/2}+T^{1/2-sigma}) ||phi||_{H^s}],
///   sup_hs:     ||W0 phi||_{L^inf_t H^s} / ||phi||_{H^s} (= 1 exactly at s=0).
RatioStats ratio_W0(const EstimateConfig& cfg, W0Variant variant = W0Variant::strichartz);

/// Duhamel ratios ||Phi_f||_{L^q_t W^{s,q} cap L^inf_t H^s} / ||f||_{L^{q'}_t W^{s,q'}}
/// with q' = q/(q-1), over random band-limited forcing ensembles.
RatioStats ratio_duhamel(const EstimateConfig& cfg, double q = 4.0);

/// Boundary-operator ratios
///   ||W_b[h1,h2]||_{L^r_t W^{s,r} cap L^inf_t H^s} / sum_j boundary_norm(h_j, s)
/// over smoothly windowed random boundary ensembles.
RatioStats ratio_Wb(const EstimateConfig& cfg);

/// Growth curves of the boundary-operator counterexample family: per N,
/// lhs = ||W_b1 h_N||_{L^2_xyt}, rhs = ||h_N||_{H^sigma_t L^2_x cap L^2_t H^1_x},
/// evaluated semi-analytically (the construction is time-periodic, so the
/// mode-coupling sums and the period L^2 are exact; the x-factor is a fixed
/// smooth bump handled by quadrature).
struct SharpnessCurve {
  std::vector<int> N;
  std::vector<double> lhs, rhs, ratio;
};
SharpnessCurve sharpness_probe(double beta, int N_max, double sigma);

/// Data-to-solution Lipschitz table: reruns march under joint random
/// perturbations of phi (and h1 when present) of the given magnitude and
/// tabulates discrete solution-space distance over data distance.
struct DependenceRow {
  double data_delta = 0.0;
  double solution_delta = 0.0;
  double ratio = 0.0;
};
std::vector<DependenceRow> dependence_probe(const Scenario& scn, int n_perturbations,
                                            double magnitude, std::uint64_t seed = 1);

}  // namespace stripnls
