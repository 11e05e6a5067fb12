#include "pdc/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

ModeDistribution build_modes(double mu, double gain, int k_max,
                             double tail_tol) {
  if (!std::isfinite(mu) || mu < 0.0 || mu >= 1.0)
    throw ConfigError("mode decay mu must lie in [0, 1), got " +
                      std::to_string(mu));
  if (!std::isfinite(gain) || gain < 0.0)
    throw ConfigError("optical gain must be finite and >= 0, got " +
                      std::to_string(gain));
  if (k_max < 1) throw ConfigError("mode count must be >= 1");
  if (!std::isfinite(tail_tol) || tail_tol <= 0.0 || tail_tol > 1.0)
    throw ConfigError("mode-tail tolerance must lie in (0, 1]");
  double tail = std::pow(mu, double(k_max));
  if (tail > tail_tol)
    throw ModeTailTooHeavy("mode tail mu^k_max = " + std::to_string(tail) +
                           " exceeds tolerance " + std::to_string(tail_tol) +
                           "; raise k_max for mu = " + std::to_string(mu));
  ModeDistribution m;
  m.mu = mu;
  m.gain = gain;
  m.lambda.resize(std::size_t(k_max));
  m.r.resize(std::size_t(k_max));
  double lk = std::sqrt(1.0 - mu);
  for (int k = 0; k < k_max; ++k) {
    m.lambda[std::size_t(k)] = lk;
    m.r[std::size_t(k)] = gain * lk;
    lk *= mu;
  }
  return m;
}

ModeDistribution build_modes_auto(double mu, double gain, double profile_tol,
                                  int max_modes) {
  if (!std::isfinite(profile_tol) || profile_tol <= 0.0 || profile_tol > 1.0)
    throw ConfigError("profile tolerance must lie in (0, 1]");
  if (!std::isfinite(mu) || mu < 0.0 || mu >= 1.0)
    throw ConfigError("mode decay mu must lie in [0, 1), got " +
                      std::to_string(mu));
  int k_max = 1;
  double tail = mu;  // mu^k_max
  while (tail >= profile_tol) {
    ++k_max;
    tail *= mu;
    if (k_max > max_modes)
      throw ModeTailTooHeavy("mu = " + std::to_string(mu) + " needs more than " +
                             std::to_string(max_modes) +
                             " modes for profile tolerance " +
                             std::to_string(profile_tol));
  }
  return build_modes(mu, gain, k_max, 1.0);
}

double schmidt_number(const ModeDistribution& modes) {
  double s2 = 0.0;
  double s4 = 0.0;
  for (double l : modes.lambda) {
    double l2 = l * l;
    s2 += l2;
    s4 += l2 * l2;
  }
  if (!(s4 > 0.0)) throw ConfigError("mode profile has no weight");
  return s2 * s2 / s4;
}

double mu_from_schmidt(double schmidt_k) {
  if (!std::isfinite(schmidt_k) || schmidt_k < 1.0)
    throw ConfigError("Schmidt number must be >= 1, got " +
                      std::to_string(schmidt_k));
  return std::sqrt((schmidt_k - 1.0) / (schmidt_k + 1.0));
}

namespace {

// h_N(x_0, x_1, ...) for N = 0..N_max via the power-sum recurrence, with
// N_max chosen adaptively. The neglected tail sum_{M>N} h_M is bounded by
// sum_{M>N} C(M+K-1, K-1) x_0^M, summed through its geometric majorant once
// the term ratio x_0 (M+K)/(M+1) falls below one. For K = 1 this reduces to
// the single-mode bound x^{N+1}/(1-x), and the stopping rule (absolute base
// cutoff plus extension until the tail is small relative to the weighted
// sum) matches the single-mode evaluator so the mu = 0 paths agree.
struct HomogeneousSeries {
  std::vector<double> h;
  double vacuum_prefactor = 1.0;  // prod_k sech^2 r_k
  double x0 = 0.0;                // largest pair parameter
  double tail_bound = 0.0;        // on sum_{M > N_max} h_M
  double weighted_sum = 0.0;      // sum_N c_N h_N over the retained range
};

HomogeneousSeries homogeneous_series(const ModeDistribution& modes,
                                     const CoefficientSeries* det,
                                     const TruncationPolicy& policy) {
  policy.validate();
  const int K = modes.k_max();
  HomogeneousSeries out;
  std::vector<double> x(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    double th = std::tanh(modes.r[std::size_t(k)]);
    x[std::size_t(k)] = th * th;
    double c = std::cosh(modes.r[std::size_t(k)]);
    out.vacuum_prefactor *= 1.0 / (c * c);
  }
  out.x0 = *std::max_element(x.begin(), x.end());
  auto weight = [&](int n) { return det ? det->coeff(n) : 1.0; };
  out.h.assign(1, 1.0);
  out.weighted_sum = weight(0);
  if (out.x0 == 0.0) return out;  // vacuum only

  const int base = std::max(1, adaptive_cutoff(out.x0, policy));
  std::vector<double> xpow = x;  // x_k^i for the current power i
  std::vector<double> psum;      // power sums p_i, 1-based at index i-1
  double bound_term = 1.0;       // C(N+K-1, K-1) x0^N
  for (int n = 1;; ++n) {
    if (n > policy.hard_cap) {
      if (out.tail_bound > policy.tolerance)
        throw TruncationCapExceeded(
            "total-photon series for x_0 = " + std::to_string(out.x0) +
            " exceeds hard cap " + std::to_string(policy.hard_cap));
      return out;  // absolute tolerance holds; relative extension capped
    }
    double p = 0.0;
    for (std::size_t k = 0; k < xpow.size(); ++k) {
      p += xpow[k];
      xpow[k] *= x[k];
    }
    psum.push_back(p);
    double hn = 0.0;
    for (int i = 1; i <= n; ++i)
      hn += psum[std::size_t(i - 1)] * out.h[std::size_t(n - i)];
    hn /= double(n);
    out.h.push_back(hn);
    out.weighted_sum += weight(n) * hn;

    bound_term *= out.x0 * double(n - 1 + K) / double(n);
    double ratio = out.x0 * double(n + K) / double(n + 1);
    out.tail_bound = ratio < 1.0 ? bound_term * ratio / (1.0 - ratio)
                                 : std::numeric_limits<double>::infinity();
    if (n >= base && out.tail_bound <=
                         kRelativeTailSafety * policy.tolerance * out.weighted_sum)
      return out;
  }
}

}  // namespace

PhotonDistribution total_photon_distribution(const ModeDistribution& modes,
                                             const TruncationPolicy& policy) {
  auto hs = homogeneous_series(modes, nullptr, policy);
  PhotonDistribution out;
  out.probs.resize(hs.h.size());
  for (std::size_t n = 0; n < hs.h.size(); ++n)
    out.probs[n] = hs.vacuum_prefactor * hs.h[n];
  out.truncation_deficit = hs.vacuum_prefactor * hs.tail_bound;
  return out;
}

MultimodeHeraldReport multimode_herald(const ModeDistribution& modes,
                                       const CoefficientSeries& det,
                                       const TruncationPolicy& policy) {
  auto hs = homogeneous_series(modes, &det, policy);
  double s = hs.weighted_sum;
  if (!(s > 0.0))
    throw DegenerateHerald("herald never fires for gain " +
                           std::to_string(modes.gain));
  double th0 = std::tanh(modes.r.empty() ? 0.0 : modes.r[0]);
  MultimodeHeraldReport rep;
  rep.heralding_probability = hs.vacuum_prefactor * s;
  rep.fidelity = hs.h.size() > 1 ? det.coeff(1) * (th0 * th0) / s : 0.0;
  rep.total.probs.resize(hs.h.size());
  for (std::size_t n = 0; n < hs.h.size(); ++n)
    rep.total.probs[n] = hs.vacuum_prefactor * hs.h[n];
  rep.total.truncation_deficit = hs.vacuum_prefactor * hs.tail_bound;
  rep.vacuum_prefactor = hs.vacuum_prefactor;
  return rep;
}

std::vector<FrontierPoint> multimode_frontier(double mu,
                                              std::span<const double> gain_grid,
                                              const DetectorModel& det,
                                              const TruncationPolicy& policy) {
  auto series = det.coefficients();
  std::vector<FrontierPoint> out;
  out.reserve(gain_grid.size());
  for (double gain : gain_grid) {
    FrontierPoint pt;
    pt.param = gain;
    try {
      auto modes = build_modes_auto(mu, gain);
      auto rep = multimode_herald(modes, series, policy);
      pt.fidelity = rep.fidelity;
      pt.heralding_probability = rep.heralding_probability;
    } catch (const DegenerateHerald&) {
      pt.status = PointStatus::DegenerateHerald;
    } catch (const TruncationCapExceeded&) {
      pt.status = PointStatus::TruncationCapExceeded;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace pdc
