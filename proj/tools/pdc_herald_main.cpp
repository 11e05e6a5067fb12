// pdc-herald: heralded single-photon source calculator.
//
// Subcommands: sweep, figure <fig2..fig6>, optimize, multiplex, print-config.
// Exit codes: 0 success, 2 config/usage error, 3 infeasible request,
// 4 numeric budget exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdc/config.hpp"
#include "pdc/errors.hpp"
#include "pdc/figures.hpp"
#include "pdc/herald.hpp"
#include "pdc/multiplex.hpp"
#include "pdc/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;

pdc::DetectorFamily family_from_flag(const std::string& s) {
  if (s == "binary_click") return pdc::DetectorFamily::BinaryClick;
  if (s == "binary_noclick") return pdc::DetectorFamily::BinaryNoClick;
  if (s == "pnr") return pdc::DetectorFamily::Pnr;
  throw pdc::ConfigError(
      "--detector must be binary_click, binary_noclick or pnr; got '" + s +
      "'");
}

void print_default_config() {
  std::cout << pdc::spec_to_json(pdc::default_spec()).dump(2) << '\n';
}

struct SweepCli {
  std::string config_path;
  std::string mode;
  double start = 0.0, stop = 0.0;
  int points = 0;
  std::string spacing;
  std::string detector;
  double eta = 0.0, dark = 0.0;
  int herald_n = 0;
  double mu = 0.0, schmidt_k = 0.0;
  int max_modes = 0;
  double profile_tol = 0.0;
  double tolerance = 0.0;
  int hard_cap = 0;
  std::string output;
  std::string format;
  int jobs = 0;

  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("sweep",
                             "evaluate a frontier over an r or gain grid");
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--mode", mode, "single or multimode");
    cmd->add_option("--start", start, "grid start");
    cmd->add_option("--stop", stop, "grid stop");
    cmd->add_option("--points", points, "grid point count");
    cmd->add_option("--spacing", spacing, "linear or log");
    cmd->add_option("--detector", detector,
                    "binary_click, binary_noclick or pnr");
    cmd->add_option("--eta", eta, "detector efficiency");
    cmd->add_option("--dark", dark, "dark-count probability");
    cmd->add_option("--herald-n", herald_n, "pnr herald photon number");
    cmd->add_option("--mu", mu, "mode-profile decay");
    cmd->add_option("--schmidt-k", schmidt_k, "target Schmidt number");
    cmd->add_option("--max-modes", max_modes, "retained-mode ceiling");
    cmd->add_option("--profile-tol", profile_tol, "mode-profile tail cutoff");
    cmd->add_option("--tolerance", tolerance, "series truncation tolerance");
    cmd->add_option("--hard-cap", hard_cap, "series truncation hard cap");
    cmd->add_option("--output", output, "output path (default stdout)");
    cmd->add_option("--format", format, "csv or json");
    cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)")
        ->envname("PDC_HERALD_JOBS");
  }

  pdc::SweepSpec resolve() const {
    pdc::SweepSpec spec = config_path.empty()
                              ? pdc::default_spec()
                              : pdc::load_config_file(config_path);
    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--mode")) {
      if (mode != "single" && mode != "multimode")
        throw pdc::ConfigError("--mode must be single or multimode");
      spec.multimode = mode == "multimode";
    }
    if (given("--start")) spec.grid.start = start;
    if (given("--stop")) spec.grid.stop = stop;
    if (given("--points")) spec.grid.points = points;
    if (given("--spacing")) {
      if (spacing == "linear")
        spec.grid.spacing = pdc::GridSpacing::Linear;
      else if (spacing == "log")
        spec.grid.spacing = pdc::GridSpacing::Log;
      else
        throw pdc::ConfigError("--spacing must be linear or log");
    }
    if (given("--detector")) spec.detector.family = family_from_flag(detector);
    if (given("--eta")) spec.detector.eta = eta;
    if (given("--dark")) spec.detector.dark = dark;
    if (given("--herald-n")) spec.detector.herald_n = herald_n;
    if (given("--mu")) {
      spec.source.mu = mu;
      spec.source.schmidt_k = -1.0;
    }
    if (given("--schmidt-k")) {
      spec.source.schmidt_k = schmidt_k;
      if (!given("--mu")) spec.source.mu = -1.0;
    }
    if (given("--max-modes")) spec.source.max_modes = max_modes;
    if (given("--profile-tol")) spec.source.profile_tol = profile_tol;
    if (given("--tolerance")) spec.policy.tolerance = tolerance;
    if (given("--hard-cap")) spec.policy.hard_cap = hard_cap;
    if (given("--output")) spec.output_path = output;
    if (given("--format")) {
      if (format == "csv")
        spec.format = pdc::OutputFormat::Csv;
      else if (format == "json")
        spec.format = pdc::OutputFormat::Json;
      else
        throw pdc::ConfigError("--format must be csv or json");
    }
    if (given("--jobs")) spec.jobs = jobs;
    return spec;
  }

  int run() const {
    pdc::SweepSpec spec = resolve();
    if (spec.output_path.empty()) {
      pdc::run_sweep(spec, std::cout);
      if (!std::cout)
        throw pdc::ConfigError("failed writing sweep to standard output");
      return kExitOk;
    }
    std::ofstream os(spec.output_path);
    if (!os)
      throw pdc::ConfigError("cannot open '" + spec.output_path +
                             "' for writing");
    pdc::run_sweep(spec, os);
    if (!os)
      throw pdc::ConfigError("failed while writing '" + spec.output_path + "'");
    return kExitOk;
  }
};

struct FigureCli {
  std::string id;
  std::string out_dir = "figures";
  int jobs = 0;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("figure", "write the canned curve families");
    cmd->add_option("id", id, "fig2, fig3, fig4, fig5 or fig6")->required();
    cmd->add_option("--out-dir", out_dir, "output directory");
    cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)")
        ->envname("PDC_HERALD_JOBS");
  }

  int run() const {
    auto files = pdc::run_figure(pdc::parse_figure_id(id), out_dir,
                                 jobs > 0 ? jobs : 0);
    for (const auto& f : files) std::cout << f << '\n';
    return kExitOk;
  }
};

struct OptimizeCli {
  std::string detector = "pnr";
  double eta = 1.0;
  double dark = 0.0;
  int herald_n = 1;
  double f_min = -1.0;
  double tolerance = 1e-12;
  int hard_cap = 4096;
  bool as_json = false;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand(
        "optimize", "maximize heralding probability under a fidelity floor");
    cmd->add_option("--detector", detector,
                    "binary_click, binary_noclick or pnr");
    cmd->add_option("--eta", eta, "detector efficiency");
    cmd->add_option("--dark", dark, "dark-count probability");
    cmd->add_option("--herald-n", herald_n, "pnr herald photon number");
    cmd->add_option("--f-min", f_min, "fidelity floor (omit for none)");
    cmd->add_option("--tolerance", tolerance, "series truncation tolerance");
    cmd->add_option("--hard-cap", hard_cap, "series truncation hard cap");
    cmd->add_flag("--json", as_json, "emit the report as JSON");
  }

  int run() const {
    pdc::DetectorModel det;
    det.family = family_from_flag(detector);
    det.eta = eta;
    det.dark = dark;
    det.herald_n = herald_n;
    std::optional<double> floor;
    if (cmd->count("--f-min") > 0) floor = f_min;
    pdc::TruncationPolicy policy{tolerance, hard_cap};
    auto rep = pdc::optimize_detector(det, floor, policy);
    if (as_json) {
      std::cout << pdc::optimize_report_to_json(rep).dump(2) << '\n';
      return kExitOk;
    }
    auto line = [](const char* k, double v) {
      std::cout << k << " = " << pdc::format_double(v) << '\n';
    };
    line("r*", rep.point.r);
    line("x*", rep.point.x);
    line("p*", rep.point.heralding_probability);
    line("F*", rep.point.fidelity);
    line("squeezing_db", rep.squeezing_db);
    line("mean_photons", rep.mean_photons);
    for (const auto& [target, n] : rep.sources_for_target)
      std::cout << "sources_needed[" << pdc::format_double(target)
                << "] = " << n << '\n';
    if (rep.point.unbounded)
      std::cout << "note: optimum sits at the search cap; the true supremum "
                   "lies at larger r\n";
    return kExitOk;
  }
};

struct MultiplexCli {
  double nu = 0.0;
  double target = -1.0;
  int sources = 0;
  CLI::App* cmd = nullptr;

  void attach(CLI::App& app) {
    cmd = app.add_subcommand("multiplex",
                             "switched-source probability calculus");
    cmd->add_option("--nu", nu, "per-source heralding probability")->required();
    cmd->add_option("--target", target, "success probability to exceed");
    cmd->add_option("--sources", sources, "bank size to evaluate");
  }

  int run() const {
    bool have_target = cmd->count("--target") > 0;
    bool have_sources = cmd->count("--sources") > 0;
    if (have_target == have_sources)
      throw pdc::ConfigError(
          "multiplex needs exactly one of --target / --sources");
    if (have_sources) {
      double p = pdc::switched_probability({nu, sources});
      std::cout << "switched_probability = " << pdc::format_double(p) << '\n';
      return kExitOk;
    }
    int n = pdc::sources_needed(nu, target);
    double p = pdc::switched_probability({nu, n});
    std::cout << "sources_needed = " << n << '\n';
    std::cout << "switched_probability = " << pdc::format_double(p) << '\n';
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heralded single-photon source calculator"};
  app.require_subcommand(0, 1);
  bool show_config = false;
  app.add_flag("--print-config", show_config,
               "print the default JSON config and exit");
  auto* print_cmd =
      app.add_subcommand("print-config", "print the default JSON config");

  SweepCli sweep;
  FigureCli figure;
  OptimizeCli optimize;
  MultiplexCli multiplex;
  sweep.attach(app);
  figure.attach(app);
  optimize.attach(app);
  multiplex.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (show_config || print_cmd->parsed()) {
      print_default_config();
      return kExitOk;
    }
    if (sweep.cmd->parsed()) return sweep.run();
    if (figure.cmd->parsed()) return figure.run();
    if (optimize.cmd->parsed()) return optimize.run();
    if (multiplex.cmd->parsed()) return multiplex.run();
    std::cerr << app.help();
    return kExitConfig;  // no subcommand given
  } catch (const pdc::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const pdc::TruncationCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const pdc::Infeasible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const pdc::UnreachableTarget& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const pdc::DegenerateHerald& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const pdc::Error& e) {
    // ConfigError, UnsupportedFamily, ModeTailTooHeavy and I/O wrappers
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
