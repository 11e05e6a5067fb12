#include "pdc/figures.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pdc/config.hpp"
#include "pdc/errors.hpp"
#include "pdc/multiplex.hpp"
#include "pdc/sweep.hpp"

namespace pdc {

FigureId parse_figure_id(std::string_view name) {
  if (name == "fig2") return FigureId::Fig2;
  if (name == "fig3") return FigureId::Fig3;
  if (name == "fig4") return FigureId::Fig4;
  if (name == "fig5") return FigureId::Fig5;
  if (name == "fig6") return FigureId::Fig6;
  throw ConfigError("unknown figure '" + std::string(name) +
                    "'; expected fig2..fig6");
}

const char* to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2:
      return "fig2";
    case FigureId::Fig3:
      return "fig3";
    case FigureId::Fig4:
      return "fig4";
    case FigureId::Fig5:
      return "fig5";
    case FigureId::Fig6:
      return "fig6";
  }
  return "unknown";
}

namespace {

constexpr double kEtaSet[] = {0.25, 0.5, 0.75, 1.0};
constexpr double kSchmidtSet[] = {1.0, 2.0, 5.0, 10.0};
constexpr int kMultiplexSet[] = {1, 2, 5, 10, 17};

GridSpec single_mode_grid() { return {0.01, 3.0, 300, GridSpacing::Log}; }

GridSpec gain_grid() {
  // 200 points spanning (0, 1.36]
  return {1.36 / 200.0, 1.36, 200, GridSpacing::Linear};
}

std::vector<FigureCurve> single_mode_family(const char* stem,
                                            DetectorFamily family, int jobs) {
  std::vector<FigureCurve> out;
  for (double eta : kEtaSet) {
    SweepSpec spec = default_spec();
    spec.grid = single_mode_grid();
    spec.detector.family = family;
    spec.detector.eta = eta;
    spec.detector.herald_n = 1;
    spec.jobs = jobs;
    FigureCurve curve;
    curve.name = std::string(stem) + "_eta" + format_double(eta);
    curve.doc = sweep_document(spec);
    curve.doc.metadata.insert(
        curve.doc.metadata.begin(),
        {std::string(stem) + " curve, detection efficiency " + format_double(eta),
         "eta set {0.25, 0.5, 0.75, 1} is a reproduction convention, not a "
         "source datum"});
    out.push_back(std::move(curve));
  }
  return out;
}

std::vector<FigureCurve> multimode_family(const char* stem,
                                          DetectorFamily family, int jobs) {
  std::vector<FigureCurve> out;
  for (double k : kSchmidtSet) {
    SweepSpec spec = default_spec();
    spec.multimode = true;
    spec.grid = gain_grid();
    spec.source.schmidt_k = k;
    spec.detector.family = family;
    spec.detector.eta = 1.0;
    spec.detector.herald_n = 1;
    spec.jobs = jobs;
    FigureCurve curve;
    curve.name = std::string(stem) + "_K" + format_double(k);
    curve.doc = sweep_document(spec);
    curve.doc.metadata.insert(curve.doc.metadata.begin(),
                              std::string(stem) + " curve, Schmidt number " +
                                  format_double(k));
    out.push_back(std::move(curve));
  }
  return out;
}

std::vector<FigureCurve> multiplex_family(int jobs) {
  // base frontier: PNR herald, eta = 1
  SweepSpec spec = default_spec();
  spec.grid = single_mode_grid();
  spec.detector.family = DetectorFamily::Pnr;
  spec.detector.eta = 1.0;
  spec.detector.herald_n = 1;
  spec.jobs = jobs;
  CsvDocument base = sweep_document(spec);

  std::vector<FigureCurve> out;
  for (int n : kMultiplexSet) {
    FigureCurve curve;
    curve.name = "fig6_n" + std::to_string(n);
    curve.doc = base;
    curve.doc.metadata.insert(
        curve.doc.metadata.begin(),
        {"fig6 curve, " + std::to_string(n) +
             " switched sources, per-source probability from the base frontier",
         "multiplex_n = " + std::to_string(n)});
    for (auto& row : curve.doc.rows) {
      if (!row.herald_prob) continue;
      row.herald_prob =
          switched_probability(SwitchedSetup{*row.herald_prob, n});
    }
    out.push_back(std::move(curve));
  }
  return out;
}

}  // namespace

std::vector<FigureCurve> figure_curves(FigureId id, int jobs) {
  switch (id) {
    case FigureId::Fig2:
      return single_mode_family("fig2", DetectorFamily::BinaryClick, jobs);
    case FigureId::Fig3:
      return single_mode_family("fig3", DetectorFamily::Pnr, jobs);
    case FigureId::Fig4:
      return multimode_family("fig4", DetectorFamily::BinaryClick, jobs);
    case FigureId::Fig5:
      return multimode_family("fig5", DetectorFamily::Pnr, jobs);
    case FigureId::Fig6:
      return multiplex_family(jobs);
  }
  throw ConfigError("unknown figure id");
}

std::vector<std::string> run_figure(FigureId id, const std::string& out_dir,
                                    int jobs) {
  auto curves = figure_curves(id, jobs);
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + out_dir +
                      "': " + ec.message());
  std::vector<std::string> written;
  for (const auto& curve : curves) {
    std::filesystem::path file = dir / (curve.name + ".csv");
    std::ofstream os(file);
    if (!os) throw ConfigError("cannot open '" + file.string() + "' for writing");
    write_csv(os, curve.doc);
    if (!os) throw ConfigError("failed while writing '" + file.string() + "'");
    written.push_back(file.string());
  }
  return written;
}

}  // namespace pdc
