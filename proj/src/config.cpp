#include "pdc/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "pdc/errors.hpp"

namespace pdc {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key()))
      throw ConfigError("config: unknown key '" + path + item.key() + "'");
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number())
    throw ConfigError("config: " + path + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ConfigError("config: " + path + " must be an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string())
    throw ConfigError("config: " + path + " must be a string");
  return j.get<std::string>();
}

DetectorFamily family_from_string(const std::string& s) {
  if (s == "binary_click") return DetectorFamily::BinaryClick;
  if (s == "binary_noclick") return DetectorFamily::BinaryNoClick;
  if (s == "pnr") return DetectorFamily::Pnr;
  throw ConfigError(
      "config: detector.family must be one of binary_click, binary_noclick, "
      "pnr; got '" + s + "'");
}

const char* family_to_string(DetectorFamily f) {
  switch (f) {
    case DetectorFamily::BinaryClick:
      return "binary_click";
    case DetectorFamily::BinaryNoClick:
      return "binary_noclick";
    case DetectorFamily::Pnr:
      return "pnr";
    case DetectorFamily::Custom:
      break;
  }
  throw ConfigError("custom detectors cannot be expressed in a config file");
}

}  // namespace

SweepSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(j, "",
                 {"mode", "grid", "detector", "source", "policy", "output",
                  "jobs"});
  SweepSpec spec = default_spec();

  if (j.contains("mode")) {
    std::string mode = get_string(j["mode"], "mode");
    if (mode == "single")
      spec.multimode = false;
    else if (mode == "multimode")
      spec.multimode = true;
    else
      throw ConfigError("config: mode must be 'single' or 'multimode', got '" +
                        mode + "'");
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (!g.is_object()) throw ConfigError("config: grid must be an object");
    reject_unknown(g, "grid.", {"start", "stop", "points", "spacing"});
    if (g.contains("start")) spec.grid.start = get_number(g["start"], "grid.start");
    if (g.contains("stop")) spec.grid.stop = get_number(g["stop"], "grid.stop");
    if (g.contains("points")) spec.grid.points = get_int(g["points"], "grid.points");
    if (g.contains("spacing")) {
      std::string s = get_string(g["spacing"], "grid.spacing");
      if (s == "linear")
        spec.grid.spacing = GridSpacing::Linear;
      else if (s == "log")
        spec.grid.spacing = GridSpacing::Log;
      else
        throw ConfigError("config: grid.spacing must be 'linear' or 'log'");
    }
  }
  if (j.contains("detector")) {
    const json& d = j["detector"];
    if (!d.is_object()) throw ConfigError("config: detector must be an object");
    reject_unknown(d, "detector.", {"family", "eta", "dark", "herald_n"});
    if (d.contains("family"))
      spec.detector.family =
          family_from_string(get_string(d["family"], "detector.family"));
    if (d.contains("eta")) spec.detector.eta = get_number(d["eta"], "detector.eta");
    if (d.contains("dark"))
      spec.detector.dark = get_number(d["dark"], "detector.dark");
    if (d.contains("herald_n"))
      spec.detector.herald_n = get_int(d["herald_n"], "detector.herald_n");
  }
  if (j.contains("source")) {
    const json& s = j["source"];
    if (!s.is_object()) throw ConfigError("config: source must be an object");
    reject_unknown(s, "source.",
                   {"mu", "schmidt_k", "max_modes", "profile_tol"});
    if (s.contains("mu") && !s["mu"].is_null())
      spec.source.mu = get_number(s["mu"], "source.mu");
    if (s.contains("schmidt_k") && !s["schmidt_k"].is_null())
      spec.source.schmidt_k = get_number(s["schmidt_k"], "source.schmidt_k");
    if (s.contains("max_modes"))
      spec.source.max_modes = get_int(s["max_modes"], "source.max_modes");
    if (s.contains("profile_tol"))
      spec.source.profile_tol =
          get_number(s["profile_tol"], "source.profile_tol");
  }
  if (j.contains("policy")) {
    const json& p = j["policy"];
    if (!p.is_object()) throw ConfigError("config: policy must be an object");
    reject_unknown(p, "policy.", {"tolerance", "hard_cap"});
    if (p.contains("tolerance"))
      spec.policy.tolerance = get_number(p["tolerance"], "policy.tolerance");
    if (p.contains("hard_cap"))
      spec.policy.hard_cap = get_int(p["hard_cap"], "policy.hard_cap");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("config: output must be an object");
    reject_unknown(o, "output.", {"path", "format"});
    if (o.contains("path")) spec.output_path = get_string(o["path"], "output.path");
    if (o.contains("format")) {
      std::string f = get_string(o["format"], "output.format");
      if (f == "csv")
        spec.format = OutputFormat::Csv;
      else if (f == "json")
        spec.format = OutputFormat::Json;
      else
        throw ConfigError("config: output.format must be 'csv' or 'json'");
    }
  }
  if (j.contains("jobs")) spec.jobs = get_int(j["jobs"], "jobs");
  return spec;
}

json spec_to_json(const SweepSpec& spec) {
  json j;
  j["mode"] = spec.multimode ? "multimode" : "single";
  j["grid"] = {{"start", spec.grid.start},
               {"stop", spec.grid.stop},
               {"points", spec.grid.points},
               {"spacing",
                spec.grid.spacing == GridSpacing::Log ? "log" : "linear"}};
  j["detector"] = {{"family", family_to_string(spec.detector.family)},
                   {"eta", spec.detector.eta},
                   {"dark", spec.detector.dark},
                   {"herald_n", spec.detector.herald_n}};
  j["source"] = {{"mu", spec.source.mu >= 0.0 ? json(spec.source.mu) : json()},
                 {"schmidt_k", spec.source.schmidt_k >= 0.0
                                   ? json(spec.source.schmidt_k)
                                   : json()},
                 {"max_modes", spec.source.max_modes},
                 {"profile_tol", spec.source.profile_tol}};
  j["policy"] = {{"tolerance", spec.policy.tolerance},
                 {"hard_cap", spec.policy.hard_cap}};
  j["output"] = {{"path", spec.output_path},
                 {"format", spec.format == OutputFormat::Json ? "json" : "csv"}};
  j["jobs"] = spec.jobs;
  return j;
}

SweepSpec default_spec() {
  SweepSpec spec;
  spec.multimode = false;
  spec.grid = {0.1, 2.0, 20, GridSpacing::Linear};
  spec.detector = {};  // PNR herald_n = 1, eta = 1, dark = 0
  spec.policy = {};
  spec.format = OutputFormat::Csv;
  spec.jobs = 1;
  return spec;
}

SweepSpec load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return spec_from_json(j);
}

json optimize_report_to_json(const OptimizeReport& rep) {
  json j;
  j["r"] = rep.point.r;
  j["x"] = rep.point.x;
  j["heralding_probability"] = rep.point.heralding_probability;
  j["fidelity"] = rep.point.fidelity;
  j["unbounded"] = rep.point.unbounded;
  j["squeezing_db"] = rep.squeezing_db;
  j["mean_photons"] = rep.mean_photons;
  json targets = json::object();
  for (const auto& [target, n] : rep.sources_for_target)
    targets[format_double(target)] = n;
  j["sources_needed"] = targets;
  return j;
}

}  // namespace pdc
