#include "pdc/herald.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

struct SeriesEval {
  double x = 0.0;
  double sech2 = 1.0;
  int cutoff = 0;
  std::vector<double> weights;  // c_n x^n
  double sum = 0.0;
  double tail_bound = 0.0;  // x^{cutoff+1}/(1-x)
};

SeriesEval evaluate_series(const SqueezeParam& p, const CoefficientSeries& det,
                           const TruncationPolicy& policy) {
  SeriesEval ev;
  ev.x = pair_parameter(p);
  double c = std::cosh(p.r());
  ev.sech2 = 1.0 / (c * c);
  if (ev.x == 0.0) {
    ev.weights.assign(1, det.coeff(0));
    ev.sum = ev.weights[0];
    return ev;
  }
  // base cutoff from the absolute tail bound, with at least the n = 1 term
  // so the fidelity numerator is never cut off; then extend until the tail
  // is also small relative to the sum, otherwise the conditional quantities
  // (a ratio against S) lose accuracy when S itself is small
  int base = std::max(1, adaptive_cutoff(ev.x, policy));
  double xn = 1.0;
  double s = 0.0;
  int n = 0;
  auto push_term = [&] {
    double w = det.coeff(n) * xn;
    ev.weights.push_back(w);
    s += w;
    xn *= ev.x;
    ++n;
  };
  while (n <= base) push_term();
  double tail = std::pow(ev.x, double(n)) / (1.0 - ev.x);
  while (n <= policy.hard_cap &&
         tail > kRelativeTailSafety * policy.tolerance * s) {
    push_term();
    tail = std::pow(ev.x, double(n)) / (1.0 - ev.x);
  }
  ev.cutoff = n - 1;
  ev.sum = s;
  ev.tail_bound = tail;
  return ev;
}

PhotonDistribution conditional_state(const SeriesEval& ev) {
  PhotonDistribution out;
  out.probs.resize(ev.weights.size());
  for (std::size_t n = 0; n < ev.weights.size(); ++n)
    out.probs[n] = ev.weights[n] / ev.sum;
  out.truncation_deficit = std::min(1.0, ev.tail_bound / ev.sum);
  return out;
}

}  // namespace

double heralding_probability(const SqueezeParam& p, const CoefficientSeries& det,
                             const TruncationPolicy& policy) {
  auto ev = evaluate_series(p, det, policy);
  return ev.sech2 * ev.sum;
}

PhotonDistribution heralded_state(const SqueezeParam& p,
                                  const CoefficientSeries& det,
                                  const TruncationPolicy& policy) {
  auto ev = evaluate_series(p, det, policy);
  if (!(ev.sum > 0.0))
    throw DegenerateHerald("herald never fires at r = " + std::to_string(p.r()));
  return conditional_state(ev);
}

double single_photon_fidelity(const SqueezeParam& p,
                              const CoefficientSeries& det,
                              const TruncationPolicy& policy) {
  auto ev = evaluate_series(p, det, policy);
  if (!(ev.sum > 0.0))
    throw DegenerateHerald("herald never fires at r = " + std::to_string(p.r()));
  return ev.cutoff >= 1 ? ev.weights[1] / ev.sum : 0.0;
}

HeraldReport herald_report(const SqueezeParam& p, const CoefficientSeries& det,
                           const TruncationPolicy& policy) {
  auto ev = evaluate_series(p, det, policy);
  if (!(ev.sum > 0.0))
    throw DegenerateHerald("herald never fires at r = " + std::to_string(p.r()));
  HeraldReport rep;
  rep.heralding_probability = ev.sech2 * ev.sum;
  rep.fidelity = ev.cutoff >= 1 ? ev.weights[1] / ev.sum : 0.0;
  rep.heralded_state = conditional_state(ev);
  rep.method = EvalMethod::Series;
  return rep;
}

HeraldReport closed_form_report(const SqueezeParam& p, const DetectorModel& det,
                                const TruncationPolicy& policy) {
  auto series = det.coefficients();
  double x = pair_parameter(p);
  double c = std::cosh(p.r());
  double sech2 = 1.0 / (c * c);
  double s = series.closed_form_weighted_sum(x);  // UnsupportedFamily if custom
  if (!(s > 0.0))
    throw DegenerateHerald("herald never fires at r = " + std::to_string(p.r()));
  HeraldReport rep;
  rep.heralding_probability = sech2 * s;
  rep.fidelity = series.coeff(1) * x / s;
  // per-photon-number weights have no closed form; normalize the series
  // terms by the analytic sum instead
  int cutoff = x > 0.0 ? std::max(1, adaptive_cutoff(x, policy)) : 0;
  rep.heralded_state.probs.resize(std::size_t(cutoff) + 1);
  double xn = 1.0;
  for (int n = 0; n <= cutoff; ++n) {
    rep.heralded_state.probs[std::size_t(n)] = series.coeff(n) * xn / s;
    xn *= x;
  }
  double tail = x > 0.0 ? std::pow(x, double(cutoff) + 1.0) / (1.0 - x) : 0.0;
  rep.heralded_state.truncation_deficit = std::min(1.0, tail / s);
  rep.method = EvalMethod::ClosedForm;
  return rep;
}

const char* to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok:
      return "ok";
    case PointStatus::DegenerateHerald:
      return "degenerate_herald";
    case PointStatus::TruncationCapExceeded:
      return "truncation_cap_exceeded";
  }
  return "unknown";
}

std::vector<FrontierPoint> frontier(const DetectorModel& det,
                                    std::span<const double> r_grid,
                                    const TruncationPolicy& policy) {
  auto series = det.coefficients();
  std::vector<FrontierPoint> out;
  out.reserve(r_grid.size());
  for (double r : r_grid) {
    FrontierPoint pt;
    pt.param = r;
    try {
      auto rep = herald_report(SqueezeParam(r), series, policy);
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

namespace {

// Objective machinery for optimal_r, all in the pair parameter x where the
// quantities are smooth rational functions.
struct XObjective {
  CoefficientSeries series;
  TruncationPolicy policy;
  double c1;

  double weighted_sum(double x) const {
    if (x <= 0.0) return series.coeff(0);
    if (series.has_closed_form()) return series.closed_form_weighted_sum(x);
    int base = std::max(1, adaptive_cutoff(x, policy));
    double s = 0.0;
    double xn = 1.0;
    int n = 0;
    for (; n <= base; ++n) {
      s += series.coeff(n) * xn;
      xn *= x;
    }
    // same relative extension as the report evaluator
    while (n <= policy.hard_cap &&
           std::pow(x, double(n)) / (1.0 - x) >
               kRelativeTailSafety * policy.tolerance * s) {
      s += series.coeff(n) * xn;
      xn *= x;
      ++n;
    }
    return s;
  }
  double prob(double x) const { return (1.0 - x) * weighted_sum(x); }
  // false when the herald is degenerate or the fidelity floor is missed
  bool feasible(double x, double f_min) const {
    double s = weighted_sum(x);
    if (!(s > 0.0)) return false;
    return c1 * x / s >= f_min;
  }
  double fidelity(double x) const {
    double s = weighted_sum(x);
    return s > 0.0 ? c1 * x / s : 0.0;
  }
};

}  // namespace

OptimalPoint optimal_r(const DetectorModel& det, double f_min,
                       const TruncationPolicy& policy) {
  policy.validate();
  if (!std::isfinite(f_min) || f_min < 0.0 || f_min > 1.0)
    throw ConfigError("fidelity floor must lie in [0, 1], got " +
                      std::to_string(f_min));
  XObjective obj{det.coefficients(), policy, 0.0};
  obj.c1 = obj.series.coeff(1);
  const double x_cap = pair_parameter_cap(policy);

  // coarse scan: locate the best feasible grid point and its feasible run
  const int grid_n = 2048;
  std::vector<double> xs(grid_n + 1), ps(grid_n + 1);
  std::vector<char> feas(grid_n + 1);
  int best = -1;
  for (int i = 0; i <= grid_n; ++i) {
    double x = x_cap * double(i) / double(grid_n);
    xs[std::size_t(i)] = x;
    feas[std::size_t(i)] = obj.feasible(x, f_min) ? 1 : 0;
    ps[std::size_t(i)] = obj.prob(x);
    if (feas[std::size_t(i)] && (best < 0 || ps[std::size_t(i)] > ps[std::size_t(best)]))
      best = i;
  }
  if (best < 0)
    throw Infeasible("no squeezing amplitude reaches fidelity " +
                     std::to_string(f_min) + " for detector " + det.label());
  int run_lo = best;
  while (run_lo > 0 && feas[std::size_t(run_lo - 1)]) --run_lo;
  int run_hi = best;
  while (run_hi < grid_n && feas[std::size_t(run_hi + 1)]) ++run_hi;

  // sharpen the feasibility boundaries; keep the feasible side
  auto refine_boundary = [&](double x_bad, double x_good) {
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (x_bad + x_good);
      (obj.feasible(mid, f_min) ? x_good : x_bad) = mid;
    }
    return x_good;
  };
  double lo = run_lo > 0 ? refine_boundary(xs[std::size_t(run_lo - 1)],
                                           xs[std::size_t(run_lo)])
                         : xs[std::size_t(run_lo)];
  double hi = run_hi < grid_n ? refine_boundary(xs[std::size_t(run_hi + 1)],
                                                xs[std::size_t(run_hi)])
                              : x_cap;

  // golden-section maximization of p on the bracket around the best point
  double a = std::max(lo, best > 0 ? xs[std::size_t(best - 1)] : lo);
  double b = std::min(hi, best < grid_n ? xs[std::size_t(best + 1)] : hi);
  const double inv_phi = 0.6180339887498949;
  double u = b - inv_phi * (b - a);
  double v = a + inv_phi * (b - a);
  double pu = obj.prob(u);
  double pv = obj.prob(v);
  while (b - a > 1e-10) {
    if (pu >= pv) {  // ties toward the smaller pair parameter
      b = v;
      v = u;
      pv = pu;
      u = b - inv_phi * (b - a);
      pu = obj.prob(u);
    } else {
      a = u;
      u = v;
      pu = pv;
      v = a + inv_phi * (b - a);
      pv = obj.prob(v);
    }
  }
  double x_star = 0.5 * (a + b);
  double p_star = obj.prob(x_star);
  // a boundary of the feasible interval may beat the interior point
  for (double cand : {lo, hi}) {
    double pc = obj.prob(cand);
    if (pc > p_star && obj.feasible(cand, f_min)) {
      x_star = cand;
      p_star = pc;
    }
  }
  if (!(p_star > 1e-12))
    throw Infeasible("fidelity floor " + std::to_string(f_min) +
                     " is met only where the herald probability vanishes (" +
                     det.label() + ")");

  OptimalPoint opt;
  opt.x = x_star;
  opt.r = std::atanh(std::sqrt(x_star));
  opt.heralding_probability = p_star;
  opt.fidelity = obj.fidelity(x_star);
  opt.unbounded = run_hi == grid_n && x_star > x_cap - 1e-6;
  return opt;
}

}  // namespace pdc
