#pragma once

namespace pdc {

// Bank of identical heralded sources behind an ideal switch: the output
// fires when at least one source heralds.
struct SwitchedSetup {
  double per_source_probability = 0.0;
  int sources = 1;
  void validate() const;  // throws ConfigError on out-of-range members
};

// 1 - (1 - nu)^n, evaluated via expm1/log1p for small nu.
double switched_probability(const SwitchedSetup& setup);

// Smallest n with switched probability strictly above target.
// Throws UnreachableTarget when nu == 0 or target >= 1.
int sources_needed(double per_source_probability, double target);

}  // namespace pdc
