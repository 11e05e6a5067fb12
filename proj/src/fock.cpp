#include "pdc/fock.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pdc/errors.hpp"

namespace pdc {

SqueezeParam::SqueezeParam(double r) : r_(r) {
  if (!std::isfinite(r) || r < 0.0)
    throw ConfigError("squeezing parameter must be finite and >= 0, got " +
                      std::to_string(r));
}

void TruncationPolicy::validate() const {
  if (!std::isfinite(tolerance) || tolerance <= 0.0 || tolerance >= 1.0)
    throw ConfigError("truncation tolerance must lie in (0, 1)");
  if (hard_cap < 1) throw ConfigError("truncation hard_cap must be >= 1");
}

double PhotonDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 1; n < probs.size(); ++n) m += double(n) * probs[n];
  return m;
}

double pair_parameter(const SqueezeParam& p) {
  double t = std::tanh(p.r());
  return t * t;
}

double mean_photon_number(const SqueezeParam& p) {
  double s = std::sinh(p.r());
  return s * s;
}

double squeezing_db(const SqueezeParam& p) {
  return 20.0 * p.r() / std::numbers::ln10;
}

// Smallest N with x^{N+1} / (1 - x) <= tol; valid tail bound for any
// coefficient series with c_n in [0, 1].
int adaptive_cutoff(double x, const TruncationPolicy& policy) {
  policy.validate();
  if (!std::isfinite(x) || x < 0.0 || x >= 1.0)
    throw ConfigError("pair parameter must lie in [0, 1), got " +
                      std::to_string(x));
  if (x == 0.0) return 0;
  double omx = 1.0 - x;
  auto tail_ok = [&](int n) {
    return std::pow(x, double(n) + 1.0) <= policy.tolerance * omx;
  };
  // log-space estimate, then walk to the exact boundary
  double est = std::log(policy.tolerance * omx) / std::log(x) - 1.0;
  int n = 0;
  if (std::isfinite(est) && est > 0.0) n = int(est) > 3 ? int(est) - 3 : 0;
  while (n > 0 && tail_ok(n - 1)) --n;
  while (!tail_ok(n)) {
    ++n;
    if (n > policy.hard_cap)
      throw TruncationCapExceeded("adaptive cutoff for x = " + std::to_string(x) +
                                  " exceeds hard cap " +
                                  std::to_string(policy.hard_cap));
  }
  return n;
}

PhotonDistribution thermal_distribution(const SqueezeParam& p,
                                        const TruncationPolicy& policy) {
  double x = pair_parameter(p);
  double c = std::cosh(p.r());
  double omx = 1.0 / (c * c);  // sech^2 r = 1 - tanh^2 r, to the last ulp
  int n_max = adaptive_cutoff(x, policy);
  PhotonDistribution out;
  out.probs.resize(std::size_t(n_max) + 1);
  double w = omx;
  for (int n = 0; n <= n_max; ++n) {
    out.probs[std::size_t(n)] = w;
    w *= x;
  }
  out.truncation_deficit = std::pow(x, double(n_max) + 1.0);
  return out;
}

double pair_parameter_cap(const TruncationPolicy& policy) {
  policy.validate();
  auto fits = [&](double x) {
    return std::pow(x, double(policy.hard_cap) + 1.0) <=
           policy.tolerance * (1.0 - x);
  };
  double hi = 1.0 - 1e-16;
  if (fits(hi)) return hi;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (fits(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace pdc
