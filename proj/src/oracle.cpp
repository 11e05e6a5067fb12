#include "pdc/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pdc/errors.hpp"

// Deliberately self-contained reference implementation: builds the truncated
// joint amplitudes from scratch and sums them exhaustively. Shares nothing
// with the production evaluators beyond the detector coefficients.

namespace pdc {

namespace {

// compensated accumulation so thousands of terms stay exact to ~1 ulp
struct Kahan {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double y = v - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

int JointTruncation::resolved_total_cutoff() const {
  return total_cutoff >= 0 ? total_cutoff : per_mode_cutoff * mode_count;
}

void JointTruncation::validate() const {
  if (per_mode_cutoff < 1) throw ConfigError("per_mode_cutoff must be >= 1");
  if (mode_count < 1) throw ConfigError("mode_count must be >= 1");
  if (total_cutoff == 0 || total_cutoff < -1)
    throw ConfigError("total_cutoff must be >= 1, or -1 for the box total");
  if (budget < 1) throw ConfigError("tuple budget must be >= 1");
  double box = 1.0;
  for (int k = 0; k < mode_count; ++k) {
    box *= double(per_mode_cutoff) + 1.0;
    if (box > double(budget))
      throw BudgetExceeded("enumeration box (" +
                           std::to_string(per_mode_cutoff + 1) + ")^" +
                           std::to_string(mode_count) + " exceeds budget " +
                           std::to_string(budget));
  }
}

OracleResult oracle_single_mode(double r, const CoefficientSeries& det,
                                const JointTruncation& trunc) {
  trunc.validate();
  if (trunc.mode_count != 1)
    throw ConfigError("oracle_single_mode expects mode_count == 1");
  if (!std::isfinite(r) || r < 0.0)
    throw ConfigError("squeezing parameter must be finite and >= 0");
  int n_max = std::min(trunc.per_mode_cutoff, trunc.resolved_total_cutoff());

  double th = std::tanh(r);
  double sech = 1.0 / std::cosh(r);
  OracleResult res;
  res.total_distribution.resize(std::size_t(n_max) + 1);
  Kahan p;
  double amp = sech;  // sech(r) tanh^n(r)
  for (int n = 0; n <= n_max; ++n) {
    double w = amp * amp;
    res.total_distribution[std::size_t(n)] = w;
    p.add(det.coeff(n) * w);
    amp *= th;
    ++res.tuples_visited;
  }
  res.heralding_probability = p.sum;
  res.fidelity = p.sum > 0.0
                     ? det.coeff(1) * res.total_distribution[1] / p.sum
                     : 0.0;
  return res;
}

OracleResult oracle_multimode(std::span<const double> mode_r,
                              const CoefficientSeries& det,
                              const JointTruncation& trunc) {
  trunc.validate();
  const int modes = int(mode_r.size());
  if (modes < 1) throw ConfigError("need at least one mode");
  if (trunc.mode_count != modes)
    throw ConfigError("mode_count " + std::to_string(trunc.mode_count) +
                      " does not match " + std::to_string(modes) +
                      " supplied amplitudes");
  const int cap = trunc.per_mode_cutoff;
  const int n_cap = trunc.resolved_total_cutoff();

  // per-mode tables x_k^n and the joint vacuum weight, built independently
  double vac = 1.0;
  std::vector<std::vector<double>> xpow(static_cast<std::size_t>(modes));
  for (int k = 0; k < modes; ++k) {
    double rr = mode_r[std::size_t(k)];
    if (!std::isfinite(rr) || rr < 0.0)
      throw ConfigError("mode amplitudes must be finite and >= 0");
    double th = std::tanh(rr);
    double sech = 1.0 / std::cosh(rr);
    vac *= sech * sech;
    auto& tab = xpow[std::size_t(k)];
    tab.resize(std::size_t(cap) + 1);
    double v = 1.0;
    for (int n = 0; n <= cap; ++n) {
      tab[std::size_t(n)] = v;
      v *= th * th;
    }
  }
  std::vector<double> cs(std::size_t(n_cap) + 1);
  for (int n = 0; n <= n_cap; ++n) cs[std::size_t(n)] = det.coeff(n);

  // odometer over all occupation tuples in lexicographic order
  std::vector<int> n(std::size_t(modes), 0);
  std::vector<Kahan> per_total(std::size_t(n_cap) + 1);
  Kahan p;
  OracleResult res;
  while (true) {
    int total = 0;
    for (int v : n) total += v;
    if (total <= n_cap) {
      double w = vac;
      for (int k = 0; k < modes; ++k)
        w *= xpow[std::size_t(k)][std::size_t(n[std::size_t(k)])];
      per_total[std::size_t(total)].add(w);
      p.add(cs[std::size_t(total)] * w);
      ++res.tuples_visited;
    }
    int k = modes - 1;
    while (k >= 0 && n[std::size_t(k)] == cap) {
      n[std::size_t(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++n[std::size_t(k)];
  }

  res.total_distribution.resize(std::size_t(n_cap) + 1);
  for (int i = 0; i <= n_cap; ++i)
    res.total_distribution[std::size_t(i)] = per_total[std::size_t(i)].sum;
  res.heralding_probability = p.sum;
  // weight of the tuple (1, 0, ..., 0) against everything the herald accepts
  double w_single = vac * xpow[0][1];
  res.fidelity = p.sum > 0.0 ? cs[1] * w_single / p.sum : 0.0;
  return res;
}

}  // namespace pdc
