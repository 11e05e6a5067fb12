#pragma once

#include <string>

#include <json.hpp>

#include "pdc/sweep.hpp"

namespace pdc {

// JSON <-> SweepSpec. Unknown keys are rejected so typos fail loudly;
// all parse errors carry the offending field path in the message.
SweepSpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const SweepSpec& spec);

// Spec with every field at its default, as emitted by print-config.
SweepSpec default_spec();

SweepSpec load_config_file(const std::string& path);

nlohmann::json optimize_report_to_json(const OptimizeReport& rep);

}  // namespace pdc
