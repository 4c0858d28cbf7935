#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "decomp/hl.hpp"

namespace decomp {

// Restriction data for one non-dense stratum.  Matrices act on block
// coordinates of the graded model: restriction[(b, j)] maps Gr_b H^j of
// the ordinary side to the stratum's auxiliary space, and
// restriction_compact[(b, j)] does the same on the compact-support side.
// A missing matrix is the zero map (no auxiliary cohomology there).
struct Stratum {
  std::string label;
  int dim = 0;  // dimension of the closed subvariety supporting the stratum
  std::map<std::pair<int, int>, Matrix> restriction;
  std::map<std::pair<int, int>, Matrix> restriction_compact;

  const Matrix* find(int b, int j) const;
  const Matrix* find_compact(int b, int j) const;
};

// Graded (b, j)-indexed pairing between the ordinary and compact-support
// sides: pairing[(b, j)] has one row per dimension of Gr_b H^j and one
// column per dimension of Gr_{-b} H_!^{2d - j}, where d = ambient_dim.
struct SupportData {
  int ambient_dim = 0;
  std::string dense_label;
  std::vector<Stratum> strata;
  std::map<std::pair<int, int>, Matrix> pairing;

  const Matrix* find_pairing(int b, int j) const;
  // Index shift between the perverse index on the total space and the one
  // on a stratum of the given closure dimension.
  int index_shift(int stratum_dim) const { return ambient_dim - stratum_dim; }
};

// Summand of one graded level: a subspace of Gr_b H^j per degree j, with
// the matching compact-support twin at the mirror index.
struct SummandPair {
  std::map<int, Subspace> ordinary;  // degree j -> subspace of Gr_b H^j
  std::map<int, Subspace> compact;   // degree j -> subspace of Gr_b H_!^j
};

struct PairingFailure {
  int b = 0;
  int j = 0;
  std::string what;
};

struct PairingReport {
  std::vector<PairingFailure> failures;
  bool ok() const { return failures.empty(); }
};

struct SupportDecomposition {
  // (b, degree j) -> summands in declaration order, dense label first.
  std::map<std::pair<int, int>, std::vector<std::pair<std::string, Subspace>>> ordinary;
  std::map<std::pair<int, int>, std::vector<std::pair<std::string, Subspace>>> compact;
};

// Pairs the ordinary and compact HL-triples of one realization with the
// stratum restriction data.  Both triples must share the filtration range.
class SupportScenario {
 public:
  SupportScenario(const HLTriple& ordinary, const HLTriple& compact, SupportData data);

  const SupportData& data() const { return data_; }

  // Checks every pairing block between nonzero graded pieces is square
  // and invertible.
  PairingReport check_graded_pairing() const;

  // Dense summand at level b: intersection of the kernels of all
  // non-dense restrictions, on both sides.
  SummandPair dense_summand(int b) const;

  // Non-dense summand at level b for one stratum label: kernels of the
  // other strata's restrictions cut with the pairing-orthogonal
  // complement of the opposite side's dense summand.
  SummandPair nondense_summand(int b, const std::string& label) const;

  // All summands at all levels, certified: per (b, j) the summands are
  // independent, fill the graded piece, and distinct labels pair to zero.
  // Throws DataError (with the offending indices) when the certification
  // fails.
  SupportDecomposition assemble() const;

 private:
  const HLTriple& ordinary_;
  const HLTriple& compact_;
  SupportData data_;

  Subspace kernel_cut(int b, int j, const std::string& skip_label, bool compact_side) const;
};

}  // namespace decomp
