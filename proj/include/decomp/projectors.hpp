#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decomp/supports.hpp"

namespace decomp {

enum class FamilyKind { perversity, support, primitive, both };

std::string family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);

// Index of one summand.  Unused fields stay at their defaults; the kind
// determines which fields are meaningful: b | (b, label) | (i, j) |
// (i, j, label) with b = -i + 2j.
struct BlockKey {
  int b = 0;
  int i = 0;
  int j = 0;
  std::string label;

  auto operator<=>(const BlockKey&) const = default;
  std::string to_string(FamilyKind kind) const;
};

// The four decompositions of the full graded space, per degree, in graded
// coordinates.  Zero summands are kept.
struct FourDecompositions {
  // kind -> degree -> key -> subspace of the graded coordinates.
  std::map<FamilyKind, std::map<int, std::map<BlockKey, Subspace>>> families;

  const std::map<int, std::map<BlockKey, Subspace>>& family(FamilyKind kind) const {
    return families.at(kind);
  }
};

// Builds all four decompositions from the primitive data and (optionally)
// a support decomposition.  Without support data every graded piece is
// assigned to the given dense label, so the four families still exist and
// collapse pairwise.  Each family is certified to be a direct sum.
FourDecompositions four_decompositions(const HLTriple& t, const PrimitiveDecomposition& prim,
                                       const SupportDecomposition* supports, bool compact_side,
                                       const std::string& dense_label);

// Complete system of projectors of one family: per key, ambient matrices
// on every degree of the underlying space.
struct ProjectorFamily {
  FamilyKind kind = FamilyKind::perversity;
  std::map<int, std::size_t> degree_dims;
  std::map<BlockKey, std::map<int, Matrix>> projectors;

  Matrix block(const BlockKey& key, int degree) const;
};

// Conjugates the block projections of the graded coordinates through the
// canonical splitting: pi = phi . (projection onto the summand) . phi^-1.
ProjectorFamily build_projectors(const CanonicalSplitting& split, const FourDecompositions& decomps,
                                 FamilyKind kind);

struct SystemViolation {
  std::string what;  // "idempotent", "orthogonal", "complete"
  BlockKey first;
  BlockKey second;
  int degree = 0;
};

struct SystemReport {
  std::optional<SystemViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

// Exact check of pi^2 = pi, pi_a pi_b = 0 for a != b, sum pi = id.
SystemReport verify_projector_system(const ProjectorFamily& family);

// The canonical coarsening of a fine key, dropping the fields the coarse
// family ignores.
BlockKey canonical_refinement(FamilyKind fine, FamilyKind coarse, const BlockKey& key);

// True iff summing the fine projectors over each fiber of the refinement
// map reproduces the coarse family exactly.
bool verify_refinement(const ProjectorFamily& fine, const ProjectorFamily& coarse,
                       const std::function<BlockKey(const BlockKey&)>& refinement);
bool verify_refinement(const ProjectorFamily& fine, const ProjectorFamily& coarse);

struct PreservationViolation {
  BlockKey key;
  FiltrationKind filtration = FiltrationKind::plain;
  int degree = 0;
  int b = 0;
};

struct PreservationReport {
  std::optional<PreservationViolation> violation;
  bool ok() const { return !violation.has_value(); }
};

// A projector preserves a filtration when it maps every step into
// itself; checked literally, step by step.
PreservationReport verify_filtration_preservation(const ProjectorFamily& family,
                                                  const std::vector<const FilteredGradedSpace*>& filtrations);

}  // namespace decomp
