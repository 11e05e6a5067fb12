#pragma once

#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

// Two-mode squeezing amplitude r >= 0. The pair parameter x = tanh^2(r)
// governs the thermal photon-number statistics of each beam.
class SqueezeParam {
 public:
  explicit SqueezeParam(double r);
  double r() const noexcept { return r_; }

 private:
  double r_;
};

// Controls adaptive truncation of photon-number series.
struct TruncationPolicy {
  double tolerance = 1e-12;  // upper bound on the neglected geometric tail
  int hard_cap = 4096;       // largest admissible photon-number cutoff

  void validate() const;  // throws ConfigError on bad fields
};

// Safety margin for the relative tail criterion used when a series is
// extended past the absolute cutoff; keeps conditional ratios (fidelities)
// a comfortable factor below the policy tolerance instead of exactly at it.
inline constexpr double kRelativeTailSafety = 0.05;

// Photon-number distribution over n = 0..N_max plus the mass cut off by
// truncation. probs are exact up to truncation_deficit, which bounds the
// mass lost past the cutoff.
struct PhotonDistribution {
  std::vector<double> probs;
  double truncation_deficit = 0.0;

  double mean() const;
};

// x = tanh^2(r), in [0, 1).
double pair_parameter(const SqueezeParam& p);

// <n> = sinh^2(r) per beam.
double mean_photon_number(const SqueezeParam& p);

// Squeezing in dB, 20*log10(e)*r (variance ratio convention e^{-2r}).
double squeezing_db(const SqueezeParam& p);

// Smallest N such that the geometric tail x^{N+1}/(1-x) does not exceed
// policy.tolerance. Throws TruncationCapExceeded past policy.hard_cap.
int adaptive_cutoff(double x, const TruncationPolicy& policy);

// Thermal distribution probs(n) = sech^2(r) * tanh^{2n}(r), adaptively
// truncated so the deficit stays below policy.tolerance.
PhotonDistribution thermal_distribution(const SqueezeParam& p,
                                        const TruncationPolicy& policy = {});

// Largest pair parameter whose adaptive cutoff still fits under the policy's
// hard cap. Defines the search domain for optimizers.
double pair_parameter_cap(const TruncationPolicy& policy);

}  // namespace pdc
