#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decomp/hl.hpp"

namespace decomp {

// Canonical filtration induced by h on the graded piece Gr_{g,a}: the
// step at index c is the image of P_{h,c} ∩ P_{g,a} in block coordinates
// of g's graded model.  Both filtrations must live on the same space.
FilteredGradedSpace induced_filtration_on_graded(const FilteredGradedSpace& g,
                                                 const FilteredGradedSpace& h, int a);

struct InducedMismatch {
  int degree = 0;
  int c = 0;  // index on the h side; the declared side sits at c - a
};

// Compares a declared filtration (indexed relative to the piece, step b)
// with the induced one (step a + b) across the full index window.
std::optional<InducedMismatch> check_declared_induced(const FilteredGradedSpace& g,
                                                      const FilteredGradedSpace& h, int a,
                                                      const FilteredGradedSpace& declared);

// Support steps refine a filtration: steps[c][Y] is a subspace per degree
// with P_{c-1} <= steps[c][Y] <= P_c.
using SupportSteps = std::map<int, std::map<std::string, std::map<int, Subspace>>>;

struct SupportBlockTable {
  // (c, Y, X) -> degree -> dimension of the image of
  //   (P_{h,c,Y} ∩ P_{g,a,X}) / (P_{h,c-1} ∩ P_{g,a,X})
  // inside Gr_{g,a}, i.e. with the part below level a removed.
  std::map<std::tuple<int, std::string, std::string>, std::map<int, std::size_t>> dims;
  // degree -> dim Gr_{g,a}; the blocks must sum to this.
  std::map<int, std::size_t> graded_dims;
  bool sums_match = true;
};

// Dimension table of the double-support blocks of Gr_{g,a}.  Throws
// DataError when the given support steps are not nested correctly.
SupportBlockTable support_block_dims(const FilteredGradedSpace& g, const FilteredGradedSpace& h,
                                     int a, const SupportSteps& g_steps, const SupportSteps& h_steps);

// The distinguished subquotient at level a of g cut out by one support
// step D = P_{g,a,X}: the space D / P_{g,a-1} per degree, carrying the
// filtration induced by h, the operator induced by eta, and images of
// any extra filtrations.  eta must preserve every step of g and D itself.
struct IntersectionData {
  std::map<int, std::size_t> degree_dims;
  std::map<int, Matrix> lift;  // per degree: rows are ambient lifts of the coordinates
  std::map<int, Matrix> proj;  // per degree: ambient -> subquotient coordinates
  FilteredGradedSpace induced;  // h-filtration, reindexed by -a (perverse kind)
  EtaBlocks eta;
  std::vector<FilteredGradedSpace> extra;  // induced versions of the passed filtrations
};

IntersectionData intersection_subquotient(const FilteredGradedSpace& g,
                                          const FilteredGradedSpace& h, int a,
                                          const std::map<int, Subspace>& support_step,
                                          const EtaBlocks& eta,
                                          const std::vector<const FilteredGradedSpace*>& extra);

// Chain of filtrations g_1..g_n on one ambient space plus, optionally,
// declared filtrations on the iterated graded pieces.  The key of a
// declared entry is the prefix (a_1, ..., a_{s-1}) of induced levels and
// its value is the filtration of g_s on that piece, indexed relative to
// the piece (the induced index is the declared one shifted by the last
// prefix entry).
struct ChainData {
  std::vector<FilteredGradedSpace> chain;
  std::map<std::vector<int>, FilteredGradedSpace> declared;
};

struct ChainCheckResult {
  bool ok = true;
  std::string what;
  std::vector<int> prefix;
  int degree = 0;
  int index = 0;
  // Full prefixes -> degree -> dimension of the iterated graded piece.
  std::map<std::vector<int>, std::map<int, std::size_t>> leaf_dims;
};

// Iterates the induced-filtration construction along the chain, checking
// every declared filtration and that leaf dimensions fill the space.
ChainCheckResult multi_composition_check(const ChainData& data);

}  // namespace decomp
