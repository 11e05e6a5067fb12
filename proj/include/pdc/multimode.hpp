#pragma once

#include <span>
#include <vector>

#include "pdc/detector.hpp"
#include "pdc/fock.hpp"
#include "pdc/herald.hpp"

namespace pdc {

// Broadband squeezer with an exponentially decaying mode profile
// lambda_k = sqrt(1 - mu) * mu^k and per-mode squeezing r_k = B * lambda_k.
struct ModeDistribution {
  double mu = 0.0;    // geometric decay of the mode profile, in [0, 1)
  double gain = 0.0;  // overall optical gain B
  std::vector<double> lambda;
  std::vector<double> r;
  int k_max() const { return static_cast<int>(r.size()); }
};

// k_max retained modes. Throws ModeTailTooHeavy when mu^k_max exceeds
// tail_tol, i.e. the dropped modes still carry appreciable squeezing.
ModeDistribution build_modes(double mu, double gain, int k_max,
                             double tail_tol = 1e-4);

// Picks the smallest k_max with mu^k_max < profile_tol.
ModeDistribution build_modes_auto(double mu, double gain,
                                  double profile_tol = 1e-6,
                                  int max_modes = 4096);

// Effective mode number K = (sum lambda_k^2)^2 / sum lambda_k^4 of the
// retained profile; scale-invariant, so the profile normalization is moot.
double schmidt_number(const ModeDistribution& modes);

// Decay constant whose untruncated profile has Schmidt number K:
// mu = sqrt((K - 1) / (K + 1)).
double mu_from_schmidt(double schmidt_k);

// Distribution of the total photon number N across all modes:
// P(N) = prod_k sech^2(r_k) * h_N(x_0, x_1, ...) with x_k = tanh^2(r_k),
// h_N the complete homogeneous symmetric polynomial evaluated through the
// power-sum recurrence N h_N = sum_{i=1..N} p_i h_{N-i}, p_i = sum_k x_k^i.
PhotonDistribution total_photon_distribution(const ModeDistribution& modes,
                                             const TruncationPolicy& policy = {});

struct MultimodeHeraldReport {
  double heralding_probability = 0.0;
  double fidelity = 0.0;  // against one photon in the leading mode k = 0
  PhotonDistribution total;        // P(N) of the unheralded source
  double vacuum_prefactor = 0.0;   // A^2 = prod_k sech^2(r_k)
};

// Herald on the total photon number: the detector sees every mode at once,
// so one coefficient c_N applies per total count N. p = sum_N c_N P(N),
// F = c_1 x_0 / sum_N c_N h_N.
MultimodeHeraldReport multimode_herald(const ModeDistribution& modes,
                                       const CoefficientSeries& det,
                                       const TruncationPolicy& policy = {});

// (F, p) along an increasing gain grid at fixed decay mu; mode count chosen
// as in build_modes_auto. Per-point failures land in the point status.
std::vector<FrontierPoint> multimode_frontier(double mu,
                                              std::span<const double> gain_grid,
                                              const DetectorModel& det,
                                              const TruncationPolicy& policy = {});

}  // namespace pdc
