#pragma once

#include <span>
#include <vector>

#include "pdc/detector.hpp"
#include "pdc/fock.hpp"

namespace pdc {

enum class EvalMethod { Series, ClosedForm };

// Outcome of heralding on one detector outcome for one squeezer setting.
struct HeraldReport {
  double heralding_probability = 0.0;
  double fidelity = 0.0;  // overlap with the single-photon Fock state
  PhotonDistribution heralded_state;
  EvalMethod method = EvalMethod::Series;
};

// p = sech^2(r) * sum_n c_n tanh^{2n}(r), summed up to the adaptive cutoff.
double heralding_probability(const SqueezeParam& p, const CoefficientSeries& det,
                             const TruncationPolicy& policy = {});

// Signal state conditioned on the herald: probs(n) proportional to
// c_n tanh^{2n}(r). Throws DegenerateHerald when the herald never fires.
PhotonDistribution heralded_state(const SqueezeParam& p,
                                  const CoefficientSeries& det,
                                  const TruncationPolicy& policy = {});

// F = c_1 tanh^2(r) / sum_n c_n tanh^{2n}(r); equals heralded_state(1).
double single_photon_fidelity(const SqueezeParam& p,
                              const CoefficientSeries& det,
                              const TruncationPolicy& policy = {});

// Probability, fidelity and heralded state in one evaluation.
HeraldReport herald_report(const SqueezeParam& p, const CoefficientSeries& det,
                           const TruncationPolicy& policy = {});

// Same quantities from the analytic generating-function sums of the built-in
// families. Throws UnsupportedFamily for custom detectors.
HeraldReport closed_form_report(const SqueezeParam& p, const DetectorModel& det,
                                const TruncationPolicy& policy = {});

enum class PointStatus { Ok, DegenerateHerald, TruncationCapExceeded };

const char* to_string(PointStatus s);

// One grid point of a rate-fidelity frontier. param is the swept quantity:
// r for single-mode grids, the optical gain B for multimode grids.
struct FrontierPoint {
  double param = 0.0;
  double fidelity = 0.0;
  double heralding_probability = 0.0;
  PointStatus status = PointStatus::Ok;
};

// (F, p) along an increasing r grid; per-point failures are recorded in the
// point status instead of aborting the sweep.
std::vector<FrontierPoint> frontier(const DetectorModel& det,
                                    std::span<const double> r_grid,
                                    const TruncationPolicy& policy = {});

struct OptimalPoint {
  double r = 0.0;
  double x = 0.0;  // pair parameter at the optimum
  double heralding_probability = 0.0;
  double fidelity = 0.0;
  // The maximum sits at the policy's pair-parameter cap with the fidelity
  // constraint slack: the true supremum lies beyond the searchable domain.
  bool unbounded = false;
};

// Maximize p over r >= 0 subject to F >= f_min. Golden-section search in
// x = tanh^2(r); relies on F being non-increasing in r (checked during the
// search). Throws Infeasible when no r attains f_min.
OptimalPoint optimal_r(const DetectorModel& det, double f_min,
                       const TruncationPolicy& policy = {});

}  // namespace pdc
