#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdc/csv.hpp"
#include "pdc/detector.hpp"
#include "pdc/fock.hpp"
#include "pdc/herald.hpp"

namespace pdc {

enum class GridSpacing { Linear, Log };

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
  GridSpacing spacing = GridSpacing::Linear;
  void validate() const;  // non-empty, strictly increasing, log needs start > 0
  std::vector<double> values() const;
};

// Multimode source description: exactly one of mu / schmidt_k must be given
// (the other left negative); schmidt_k is converted via mu_from_schmidt.
struct MultimodeSource {
  double mu = -1.0;
  double schmidt_k = -1.0;
  int max_modes = 4096;
  double profile_tol = 1e-6;   // retain modes until mu^k drops below this
  double resolved_mu() const;  // throws ConfigError unless exactly one is set
};

enum class OutputFormat { Csv, Json };

// Full description of one sweep run; serializable to/from JSON config.
struct SweepSpec {
  bool multimode = false;
  GridSpec grid;  // r values for single mode, gain values for multimode
  MultimodeSource source;
  DetectorModel detector;
  TruncationPolicy policy;
  std::string output_path;  // empty means standard output
  OutputFormat format = OutputFormat::Csv;
  int jobs = 1;  // 0 = one per hardware thread
  void validate() const;
};

// Grid evaluation only; per-point failures land in the row status.
// Points may be computed concurrently (spec.jobs); row order follows the grid.
std::vector<SweepRow> evaluate_sweep(const SweepSpec& spec);

// Rows plus metadata comment lines describing the run (no timestamps, so
// repeated runs are byte-identical).
CsvDocument sweep_document(const SweepSpec& spec);

// Evaluate and write CSV or JSON to the stream.
void run_sweep(const SweepSpec& spec, std::ostream& os);

struct OptimizeReport {
  OptimalPoint point;
  double squeezing_db = 0.0;
  double mean_photons = 0.0;
  // Multiplexed sources needed to push the optimal p past each target.
  std::map<double, int> sources_for_target;  // unreachable targets omitted
};

// Maximize heralding probability subject to an optional fidelity floor and
// derive the scalar summary around the optimum.
OptimizeReport optimize_detector(const DetectorModel& det,
                                 std::optional<double> f_min,
                                 const TruncationPolicy& policy = {});

}  // namespace pdc
