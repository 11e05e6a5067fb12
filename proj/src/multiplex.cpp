#include "pdc/multiplex.hpp"

#include <cmath>
#include <string>

#include "pdc/errors.hpp"

namespace pdc {

void SwitchedSetup::validate() const {
  if (!std::isfinite(per_source_probability) || per_source_probability < 0.0 ||
      per_source_probability > 1.0)
    throw ConfigError("per-source probability must lie in [0, 1], got " +
                      std::to_string(per_source_probability));
  if (sources < 1)
    throw ConfigError("source count must be >= 1, got " +
                      std::to_string(sources));
}

double switched_probability(const SwitchedSetup& setup) {
  setup.validate();
  // 1 - (1-nu)^n without cancellation at small nu
  return -std::expm1(double(setup.sources) *
                     std::log1p(-setup.per_source_probability));
}

int sources_needed(double per_source_probability, double target) {
  double nu = per_source_probability;
  if (!std::isfinite(nu) || nu < 0.0 || nu > 1.0)
    throw ConfigError("per-source probability must lie in [0, 1], got " +
                      std::to_string(nu));
  if (!std::isfinite(target) || target < 0.0)
    throw ConfigError("target probability must be >= 0, got " +
                      std::to_string(target));
  if (nu == 0.0)
    throw UnreachableTarget("a source that never heralds cannot beat any target");
  if (target >= 1.0)
    throw UnreachableTarget("switched probability cannot exceed the target " +
                            std::to_string(target));
  auto prob = [&](int n) {
    return -std::expm1(double(n) * std::log1p(-nu));
  };
  // ceil(log(1-target)/log(1-nu)), bumped when the ratio is integral because
  // the target must be exceeded strictly; then walk to the exact boundary
  int n = 1;
  if (target > 0.0 && nu < 1.0) {
    double exact = std::log1p(-target) / std::log1p(-nu);
    double up = std::ceil(exact);
    if (up - exact < 1e-9) up += 1.0;
    n = up < 1.0 ? 1 : int(up);
  }
  while (!(prob(n) > target)) ++n;
  while (n > 1 && prob(n - 1) > target) --n;
  return n;
}

}  // namespace pdc
