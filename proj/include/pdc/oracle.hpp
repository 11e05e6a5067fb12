#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdc/detector.hpp"

namespace pdc {

// Explicit truncation box for the brute-force reference evaluator. No
// adaptive logic on purpose: the caller states exactly what gets enumerated.
struct JointTruncation {
  int per_mode_cutoff = 1;   // photon numbers 0..per_mode_cutoff per mode
  int mode_count = 1;
  int total_cutoff = -1;     // cap on N = sum n_k; -1 = per_mode_cutoff * mode_count
  std::int64_t budget = 10'000'000;  // ceiling on (cutoff+1)^modes
  int resolved_total_cutoff() const;
  void validate() const;  // throws ConfigError / BudgetExceeded
};

struct OracleResult {
  double heralding_probability = 0.0;
  double fidelity = 0.0;
  // Raw truncated sums P(N) of the unheralded total photon number,
  // N = 0..total_cutoff (filled by both entry points).
  std::vector<double> total_distribution;
  std::int64_t tuples_visited = 0;
};

// Reference values for a single squeezer by literal term-by-term summation
// of the twin-beam expansion; shares no evaluation code with the production
// paths and uses compensated accumulation throughout.
OracleResult oracle_single_mode(double r, const CoefficientSeries& det,
                                const JointTruncation& trunc);

// Reference values for independent squeezers r_k: exhaustive enumeration of
// occupation tuples (n_0, ..., n_{K-1}); detector weight c_{sum n_k};
// fidelity is the conditional weight of the pattern (1, 0, ..., 0).
OracleResult oracle_multimode(std::span<const double> mode_r,
                              const CoefficientSeries& det,
                              const JointTruncation& trunc);

}  // namespace pdc
