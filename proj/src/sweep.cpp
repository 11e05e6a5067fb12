#include "pdc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pdc/errors.hpp"
#include "pdc/multimode.hpp"
#include "pdc/multiplex.hpp"

namespace pdc {

void GridSpec::validate() const {
  if (points < 1) throw ConfigError("grid needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw ConfigError("grid bounds must be finite");
  if (points > 1 && !(start < stop))
    throw ConfigError("grid must be strictly increasing (start < stop)");
  if (spacing == GridSpacing::Log && !(start > 0.0))
    throw ConfigError("log-spaced grid needs start > 0");
  if (points > 2'000'000) throw ConfigError("grid is unreasonably large");
}

std::vector<double> GridSpec::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = start;
    return out;
  }
  if (spacing == GridSpacing::Linear) {
    double step = (stop - start) / double(points - 1);
    for (int i = 0; i < points; ++i) out[std::size_t(i)] = start + step * double(i);
  } else {
    double la = std::log(start);
    double lb = std::log(stop);
    double step = (lb - la) / double(points - 1);
    for (int i = 0; i < points; ++i)
      out[std::size_t(i)] = std::exp(la + step * double(i));
  }
  out.front() = start;
  out.back() = stop;  // pin the endpoints exactly
  return out;
}

double MultimodeSource::resolved_mu() const {
  bool have_mu = mu >= 0.0;
  bool have_k = schmidt_k >= 0.0;
  if (have_mu == have_k)
    throw ConfigError("give exactly one of source.mu / source.schmidt_k");
  double m = have_mu ? mu : mu_from_schmidt(schmidt_k);
  if (!std::isfinite(m) || m < 0.0 || m >= 1.0)
    throw ConfigError("mode decay mu must lie in [0, 1), got " +
                      std::to_string(m));
  return m;
}

void SweepSpec::validate() const {
  grid.validate();
  policy.validate();
  if (jobs < 0) throw ConfigError("jobs must be >= 0");
  if (multimode) {
    (void)source.resolved_mu();
    if (source.max_modes < 1) throw ConfigError("max_modes must be >= 1");
    if (!(source.profile_tol > 0.0) || source.profile_tol > 1.0)
      throw ConfigError("profile_tol must lie in (0, 1]");
  }
  (void)detector.coefficients();  // validates eta/dark/herald_n
}

namespace {

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

// index-parallel map with deterministic placement of results
template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn) {
  int workers = std::min(resolve_jobs(jobs), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < count; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<SweepRow> evaluate_sweep(const SweepSpec& spec) {
  spec.validate();
  auto grid = spec.grid.values();
  auto series = spec.detector.coefficients();
  std::string label = spec.detector.label();
  std::vector<SweepRow> rows(grid.size());

  if (!spec.multimode) {
    parallel_for(int(grid.size()), spec.jobs, [&](int i) {
      double r = grid[std::size_t(i)];
      SweepRow row;
      row.r = r;
      row.eta = spec.detector.eta;
      row.dark = spec.detector.dark;
      row.detector = label;
      try {
        auto rep = herald_report(SqueezeParam(r), series, spec.policy);
        row.fidelity = rep.fidelity;
        row.herald_prob = rep.heralding_probability;
      } catch (const DegenerateHerald&) {
        row.status = to_string(PointStatus::DegenerateHerald);
      } catch (const TruncationCapExceeded&) {
        row.status = to_string(PointStatus::TruncationCapExceeded);
      }
      rows[std::size_t(i)] = std::move(row);
    });
    return rows;
  }

  double mu = spec.source.resolved_mu();
  // fail fast (and once) if mu needs more modes than allowed
  auto probe = build_modes_auto(mu, 0.0, spec.source.profile_tol,
                                spec.source.max_modes);
  double k_eff = schmidt_number(probe);
  parallel_for(int(grid.size()), spec.jobs, [&](int i) {
    double gain = grid[std::size_t(i)];
    SweepRow row;
    row.gain = gain;
    row.mu = mu;
    row.schmidt_k = k_eff;
    row.eta = spec.detector.eta;
    row.dark = spec.detector.dark;
    row.detector = label;
    try {
      auto modes = build_modes_auto(mu, gain, spec.source.profile_tol,
                                    spec.source.max_modes);
      auto rep = multimode_herald(modes, series, spec.policy);
      row.fidelity = rep.fidelity;
      row.herald_prob = rep.heralding_probability;
    } catch (const DegenerateHerald&) {
      row.status = to_string(PointStatus::DegenerateHerald);
    } catch (const TruncationCapExceeded&) {
      row.status = to_string(PointStatus::TruncationCapExceeded);
    }
    rows[std::size_t(i)] = std::move(row);
  });
  return rows;
}

CsvDocument sweep_document(const SweepSpec& spec) {
  CsvDocument doc;
  doc.metadata.push_back("pdc_herald sweep");
  doc.metadata.push_back(std::string("mode = ") +
                         (spec.multimode ? "multimode" : "single"));
  doc.metadata.push_back("detector = " + spec.detector.label() +
                         ", eta = " + format_double(spec.detector.eta) +
                         ", dark = " + format_double(spec.detector.dark));
  doc.metadata.push_back(
      std::string("grid = [") + format_double(spec.grid.start) + ", " +
      format_double(spec.grid.stop) + "], points = " +
      std::to_string(spec.grid.points) + ", spacing = " +
      (spec.grid.spacing == GridSpacing::Log ? "log" : "linear"));
  if (spec.multimode) {
    double mu = spec.source.resolved_mu();
    doc.metadata.push_back("mu = " + format_double(mu));
  }
  doc.metadata.push_back("policy: tolerance = " +
                         format_double(spec.policy.tolerance) +
                         ", hard_cap = " + std::to_string(spec.policy.hard_cap));
  doc.rows = evaluate_sweep(spec);
  return doc;
}

void run_sweep(const SweepSpec& spec, std::ostream& os) {
  CsvDocument doc = sweep_document(spec);
  if (spec.format == OutputFormat::Csv) {
    write_csv(os, doc);
    return;
  }
  nlohmann::json j;
  j["metadata"] = doc.metadata;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : doc.rows) {
    nlohmann::json r;
    auto put = [&r](const char* key, const std::optional<double>& v) {
      if (v) r[key] = *v;
    };
    put("r", row.r);
    put("B", row.gain);
    put("mu", row.mu);
    put("K_eff", row.schmidt_k);
    put("eta", row.eta);
    put("dark", row.dark);
    r["detector"] = row.detector;
    put("fidelity", row.fidelity);
    put("herald_prob", row.herald_prob);
    r["status"] = row.status;
    j["rows"].push_back(std::move(r));
  }
  os << j.dump(2) << '\n';
}

OptimizeReport optimize_detector(const DetectorModel& det,
                                 std::optional<double> f_min,
                                 const TruncationPolicy& policy) {
  OptimizeReport rep;
  rep.point = optimal_r(det, f_min.value_or(0.0), policy);
  SqueezeParam at(rep.point.r);
  rep.squeezing_db = squeezing_db(at);
  rep.mean_photons = mean_photon_number(at);
  for (double target : {0.9, 0.99, 0.999}) {
    try {
      rep.sources_for_target[target] =
          sources_needed(rep.point.heralding_probability, target);
    } catch (const UnreachableTarget&) {
      // leave the target out rather than abort the report
    }
  }
  return rep;
}

}  // namespace pdc
