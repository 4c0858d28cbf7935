#pragma once

#include <string>
#include <vector>

#include "decomp/harness.hpp"

namespace decomp {

// On-disk scenario: one diagram of realizations.  The JSON encoding is
// canonical (sorted keys, fixed indentation, rationals as "p/q"), so
// serializing a loaded file is deterministic byte for byte.
struct ScenarioFile {
  DiagramStar star;
};

ScenarioFile scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const ScenarioFile& scenario);

// File variants; throw ParseError when the file cannot be read.
ScenarioFile load_scenario(const std::string& path);
void save_scenario(const ScenarioFile& scenario, const std::string& path);

// Structural validation: filtration axioms, operator shifts, pairing
// blocks, comparison invertibility and strictness, flag-data nesting.
// Cheaper than run_pipeline and safe on data that fails deep checks.
struct ValidationOutcome {
  bool ok = true;
  std::vector<CheckItem> checks;
};

ValidationOutcome validate_scenario(const ScenarioFile& scenario);

}  // namespace decomp
