#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pdc/csv.hpp"

namespace pdc {

// Canned curve families for the standard plots. fig2/fig3: single-mode
// binary / PNR frontiers over a set of detector efficiencies. fig4/fig5:
// multimode counterparts over a set of Schmidt numbers at eta = 1.
// fig6: PNR eta = 1 frontier multiplexed across several source counts.
enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6 };

FigureId parse_figure_id(std::string_view name);  // "fig2".."fig6"
const char* to_string(FigureId id);

struct FigureCurve {
  std::string name;  // file stem, e.g. "fig2_eta0.5"
  CsvDocument doc;
};

// All curves of one figure, deterministically ordered and valued.
std::vector<FigureCurve> figure_curves(FigureId id, int jobs = 1);

// Writes <out_dir>/<curve>.csv for every curve; returns the paths written.
std::vector<std::string> run_figure(FigureId id, const std::string& out_dir,
                                    int jobs = 1);

}  // namespace pdc
