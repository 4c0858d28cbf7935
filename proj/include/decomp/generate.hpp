#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "decomp/scenario.hpp"

namespace decomp {

// Knobs for the deterministic fixture factory.  Profiles:
//   hl-only     one realization, operator and filtration only
//   supports    both sides, strata, pairing, comparison map, flag data
//   composition one realization with a filtration chain and support steps
//   diagram     several realizations of one model joined by comparisons
struct FixtureSpec {
  std::uint64_t seed = 1;
  std::string profile = "hl-only";
  int max_weight = 2;   // largest planted string weight
  int spread = 2;       // extra strings planted per weight
  bool corrupt = false; // plant one inconsistency after assembly
};

// What the factory planted, for checking the analysis recovers it.
// Subspaces are in block coordinates of the graded model of the first
// realization.
struct PlantedCertificate {
  // string weight -> source degree -> number of primitive classes.
  std::map<int, std::map<int, std::size_t>> primitive_dims;
  // (level, degree) -> label -> planted summand of the graded piece.
  std::map<std::pair<int, int>, std::map<std::string, Subspace>> support_summands;
  std::map<std::pair<int, int>, std::map<std::string, Subspace>> support_summands_compact;
  // family -> degree -> key -> planted dimension (nonzero entries only).
  std::map<FamilyKind, std::map<int, std::map<BlockKey, std::size_t>>> family_dims;
};

struct GeneratedFixture {
  ScenarioFile scenario;
  PlantedCertificate certificate;
};

// Builds a random split model (a direct sum of operator strings), hides
// it behind a random change of presentation, and emits the scenario plus
// the planted structure.  Equal specs yield byte-identical scenarios.
GeneratedFixture generate_fixture(const FixtureSpec& spec);

}  // namespace decomp
