#pragma once

#include <map>
#include <optional>
#include <vector>

#include "decomp/filtered.hpp"

namespace decomp {

// Degree-two operator given by ambient blocks eta[k] : H^k -> H^{k+2}.
// Must move the filtration by at most two steps; the twist tag records
// the usual unit twist and does not enter any computation.
struct EtaBlocks {
  std::map<int, Matrix> blocks;
  Matrix block(int k, const FilteredGradedSpace& space) const;
};

// Filtered graded space with an operator eta satisfying (or claimed to
// satisfy) hard Lefschetz between opposite graded levels.
class HLTriple {
 public:
  HLTriple(FilteredGradedSpace space, EtaBlocks eta);

  const FilteredGradedSpace& space() const { return space_; }
  const EtaBlocks& eta() const { return eta_; }
  const GradedModel& model() const { return model_; }

  // Matrix of the induced map Gr_b H^k -> Gr_{b+2} H^{k+2}.
  Matrix graded_eta(int k, int b) const;
  // Matrix of the i-fold iterate Gr_b H^k -> Gr_{b+2i} H^{k+2i}.
  Matrix graded_eta_power(int k, int b, int i) const;

 private:
  FilteredGradedSpace space_;
  EtaBlocks eta_;
  GradedModel model_;
};

enum class HLStatus { ok, shift_violation, hl_failure };

struct HLWitness {
  int degree = 0;
  int b = 0;  // level of the failing source piece (or step for shift violations)
};

// One invertibility certificate per tested pair: the matrix of the
// iterated graded operator and its (nonzero) determinant.
struct HLCertificateEntry {
  int i = 0;
  int degree = 0;
  Matrix power;
  Rational det;
};

struct HLReport {
  HLStatus status = HLStatus::ok;
  std::optional<HLWitness> witness;
  std::vector<HLCertificateEntry> certificate;
  bool ok() const { return status == HLStatus::ok; }
};

// Verifies the iterates eta^i : Gr_{-i} H^k -> Gr_i H^{k+2i} are all
// invertible.  A filtration-shift violation of eta is reported as its own
// status, distinct from a genuine hard Lefschetz failure.
HLReport verify_hl(const HLTriple& t);

// Primitive subspaces P_{-i} = Ker(eta^{i+1} : Gr_{-i} -> Gr_{i+2}) and
// their eta-iterates.  All subspaces live in block coordinates of the
// graded model.
struct PrimitiveDecomposition {
  // i -> degree k -> subspace of Gr_{-i} H^k (block coordinates).
  std::map<int, std::map<int, Subspace>> primitive;
  // (i, j) -> degree m -> basis of eta^j P_{-i} inside Gr_{-i+2j} H^m.
  // Row r is the image of the r-th primitive basis vector of degree m-2j.
  std::map<std::pair<int, int>, std::map<int, Matrix>> iterate_basis;
};

// Computes primitive parts and certifies the graded pieces split as the
// direct sum of the iterates.  Throws DataError when hard Lefschetz
// fails (the decomposition is undefined in that case).
PrimitiveDecomposition primitive_parts(const HLTriple& t);

// Solution of the lifting problem for the primitives at level -i: the
// columns of lift[k] are ambient vectors of F_{-i} H^k projecting to the
// primitive basis of Gr_{-i} H^k whose eta-iterates vanish in all graded
// levels s > i after projection.  solution_dim is the dimension of the
// homogeneous solution space (0 iff the lift is unique).
struct UniqueLift {
  int i = 0;
  std::map<int, Matrix> lift;
  std::map<int, std::size_t> solution_dim;
  bool unique() const;
};

UniqueLift unique_lift(const HLTriple& t, int i);
UniqueLift unique_lift(const HLTriple& t, const PrimitiveDecomposition& prim, int i);

// Canonical filtered splitting phi[k] : graded coordinates -> H^k built
// from the unique lifts; inverse blocks are precomputed.  By
// construction phi is a filtered isomorphism inducing the identity on
// every graded piece; verify_splitting re-checks this from scratch.
struct CanonicalSplitting {
  std::map<int, Matrix> phi;
  std::map<int, Matrix> phi_inv;
  std::map<int, UniqueLift> lifts;  // keyed by i
};

CanonicalSplitting canonical_splitting(const HLTriple& t);
CanonicalSplitting canonical_splitting(const HLTriple& t, const PrimitiveDecomposition& prim);

struct SplittingCheck {
  bool invertible = true;
  bool filtered_both_ways = true;  // phi(sum of low blocks) equals each step
  bool graded_identity = true;
  int degree = 0;
  int b = 0;
  bool ok() const { return invertible && filtered_both_ways && graded_identity; }
};

SplittingCheck verify_splitting(const HLTriple& t, const CanonicalSplitting& s);

}  // namespace decomp
