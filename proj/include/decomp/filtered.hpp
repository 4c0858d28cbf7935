#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decomp/subspace.hpp"

namespace decomp {

enum class FiltrationKind { plain, perverse, weight, hodge, flag };

std::string kind_name(FiltrationKind kind);
FiltrationKind kind_from_name(const std::string& name);

// Graded vector space H = (H^k)_k carrying one increasing filtration
// F_{b_min} <= ... <= F_{b_max} per degree.  F_{b_min - 1} = 0 is implicit
// and F_{b_max} must be the full space.  Decreasing filtrations (Hodge)
// are stored with negated indices under their own kind tag.
class FilteredGradedSpace {
 public:
  FilteredGradedSpace() = default;
  FilteredGradedSpace(FiltrationKind kind, int twist, int b_min, int b_max,
                      std::map<int, std::size_t> degree_dims,
                      std::map<int, std::vector<Subspace>> steps);

  // Zero-object with an empty degree list and a one-step filtration.
  static FilteredGradedSpace empty();
  // One-step filtration F_0 = H on the given degrees.
  static FilteredGradedSpace one_step(FiltrationKind kind, int twist,
                                      const std::map<int, std::size_t>& degree_dims);

  FiltrationKind kind() const { return kind_; }
  int twist() const { return twist_; }
  int b_min() const { return b_min_; }
  int b_max() const { return b_max_; }
  const std::map<int, std::size_t>& degree_dims() const { return degree_dims_; }
  std::size_t dim(int k) const;
  std::vector<int> degrees() const;
  bool has_degree(int k) const { return degree_dims_.count(k) != 0; }

  // Step at index b, clamped: zero below b_min, full above b_max.
  const Subspace& step(int k, int b) const;

  bool operator==(const FilteredGradedSpace& other) const = default;

  struct Violation {
    int degree = 0;
    int b = 0;
    std::string what;
  };
  struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
  };
  // Checks ambient dimensions, nesting, and exhaustiveness.
  ValidationReport validate() const;

  // Reindexes steps: new step at b is the old step at b + offset(k), where
  // offset(k) is looked up per degree with a constant fallback.  Indices
  // falling outside the old range clamp to zero/full.
  FilteredGradedSpace renumbered(FiltrationKind new_kind, const std::map<int, int>& offset_per_degree,
                                 int default_offset, int new_b_min, int new_b_max) const;

 private:
  FiltrationKind kind_ = FiltrationKind::plain;
  int twist_ = 0;
  int b_min_ = 0;
  int b_max_ = 0;
  std::map<int, std::size_t> degree_dims_;
  // Per degree: steps indexed b_min..b_max.
  std::map<int, std::vector<Subspace>> steps_;
};

// Canonical presentation of all graded pieces Gr_b = F_b / F_{b-1}.
// Per degree k the pieces are laid out contiguously in order
// b_min..b_max, giving "graded coordinates" on a space of total
// dimension dim H^k.
class GradedModel {
 public:
  GradedModel() = default;
  explicit GradedModel(const FilteredGradedSpace& space);

  struct Block {
    std::size_t dim = 0;
    std::size_t offset = 0;  // start of this block in graded coordinates
    Matrix lift;             // dim x ambient, rows are the chosen lifts
    Matrix proj;             // dim x ambient, coordinates modulo F_{b-1}
  };

  int b_min() const { return b_min_; }
  int b_max() const { return b_max_; }
  const std::map<int, std::size_t>& degree_dims() const { return degree_dims_; }
  const Block& block(int k, int b) const;
  std::size_t block_dim(int k, int b) const { return block(k, b).dim; }
  std::size_t total_dim(int k) const;

  // Graded coordinates of an ambient vector of F_b (component in Gr_b).
  // full_proj: ambient -> graded coordinates, stacking all block proj maps.
  // Only meaningful blockwise (row block b applies to vectors of F_b).
  Matrix block_embed(int k, int b) const;  // graded coords <- block coords
  Matrix block_restrict(int k, int b) const;  // block coords <- graded coords

  // Subspace of graded coordinates spanned by one block.
  Subspace block_span(int k, int b) const;

 private:
  int b_min_ = 0;
  int b_max_ = 0;
  std::map<int, std::size_t> degree_dims_;
  std::map<int, std::vector<Block>> blocks_;
};

// Map of filtered graded spaces: blocks[k] sends H^k of the source to
// H^{k + degree_shift} of the target and must move the filtration by at
// most filtration_shift.  twist_shift is bookkeeping only.
class FilteredMap {
 public:
  FilteredMap() = default;
  FilteredMap(FilteredGradedSpace source, FilteredGradedSpace target, int degree_shift,
              int filtration_shift, int twist_shift, std::map<int, Matrix> blocks);

  const FilteredGradedSpace& source() const { return source_; }
  const FilteredGradedSpace& target() const { return target_; }
  int degree_shift() const { return degree_shift_; }
  int filtration_shift() const { return filtration_shift_; }
  int twist_shift() const { return twist_shift_; }
  const std::map<int, Matrix>& blocks() const { return blocks_; }
  // Zero-extent block when absent.
  Matrix block(int k) const;

  struct ShiftViolation {
    int degree = 0;
    int b = 0;
  };
  // Checks f(F_b H^k) <= F_{b + shift} H^{k + degree_shift} everywhere.
  std::optional<ShiftViolation> check_shift() const;

  struct Strictness {
    bool strict = true;
    int degree = 0;
    int b = 0;
    // A vector of im(f) ∩ F_{b+shift} outside f(F_b), in target coordinates.
    std::vector<Rational> witness;
  };
  // Strict when f(F_b) = im(f) ∩ F_{b + shift} for every degree and index.
  Strictness strictness() const;

 private:
  FilteredGradedSpace source_, target_;
  int degree_shift_ = 0, filtration_shift_ = 0, twist_shift_ = 0;
  std::map<int, Matrix> blocks_;
};

// Flag data: for each flag index j, matrices r[j][k] out of H^k (ordinary
// side; the step is the kernel) and c[j][k] into H_!^k (compact side; the
// step is the image).  Missing matrices mean the zero map.
struct FlagRestrictionData {
  std::map<int, std::map<int, Matrix>> restrictions;    // j -> degree -> out of H^k
  std::map<int, std::map<int, Matrix>> corestrictions;  // j -> degree -> into H_!^k
};

// Builds the two flag filtrations F_j = Ker r_j and F_{!,j} = Im c_j.
// Throws DataError when the resulting steps are not nested or the top
// step is not the full space.
std::pair<FilteredGradedSpace, FilteredGradedSpace> flag_filtration(
    const std::map<int, std::size_t>& ordinary_dims, const std::map<int, std::size_t>& compact_dims,
    const FlagRestrictionData& data);

}  // namespace decomp
