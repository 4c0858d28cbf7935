#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "decomp/compose.hpp"
#include "decomp/projectors.hpp"

namespace decomp {

// Degree-preserving endomorphism of the ambient space, expected to
// commute with every projector of the realization.
struct Symmetry {
  std::string label;
  std::map<int, Matrix> blocks;
};

// Restriction matrices plus the per-degree renumbering that aligns the
// resulting flag filtrations with the declared perverse ones.
struct FlagData {
  FlagRestrictionData restrictions;
  std::map<int, int> offsets;
  int default_offset = 0;
  std::map<int, int> offsets_compact;
  int default_offset_compact = 0;
};

// Composition data: the realization's own filtration is the first entry
// of the chain; later entries and declared graded filtrations refine it.
// The bundle carries its own operator for the intersection subquotient:
// unlike the realization's operator it must preserve the coarse
// filtration level by level.
struct ComposeBundle {
  std::vector<FilteredGradedSpace> later;
  std::map<std::vector<int>, FilteredGradedSpace> declared;
  SupportSteps g_support_steps;
  SupportSteps h_support_steps;
  std::string dense_label;  // empty: no intersection subquotient requested
  EtaBlocks eta;
};

// One cohomology theory applied to one geometric situation: the perverse
// filtration with its operator, and whatever optional structure the
// scenario carries.
struct Realization {
  std::string label;
  FilteredGradedSpace space;
  EtaBlocks eta;
  std::optional<FilteredGradedSpace> compact_space;
  std::optional<EtaBlocks> compact_eta;
  std::optional<SupportData> supports;
  std::optional<FilteredGradedSpace> hodge;
  std::optional<FilteredGradedSpace> weight;
  std::vector<Symmetry> symmetries;
  std::map<int, Matrix> comap;  // compact -> ordinary, empty when absent
  std::optional<FlagData> flag;
  std::optional<ComposeBundle> compose;

  bool has_compact() const { return compact_space.has_value(); }
};

struct CheckItem {
  std::string name;
  bool ok = true;
  std::string detail;
};

// All projector families of one realization, both sides.
struct ProjectorBundle {
  std::map<FamilyKind, ProjectorFamily> ordinary;
  std::map<FamilyKind, ProjectorFamily> compact;
};

struct PipelineResult {
  std::string label;
  bool ok = true;
  std::vector<CheckItem> checks;
  std::optional<ProjectorBundle> bundle;
  std::optional<CanonicalSplitting> splitting;
  std::optional<CanonicalSplitting> splitting_compact;
  std::unique_ptr<PipelineResult> intersection_run;

  void add(const std::string& name, bool item_ok, const std::string& detail = "");
};

// Runs every check the realization's data supports: filtration validity,
// hard Lefschetz, unique lifts, canonical splitting, support
// decomposition, the four projector families with their refinements,
// filtration preservation, symmetry equivariance, the compact comparison
// map, flag renumbering, and composition data.  Never throws on check
// failures; they are recorded as failed items.
PipelineResult run_pipeline(const Realization& r);

}  // namespace decomp
