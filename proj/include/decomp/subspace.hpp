#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "decomp/matrix.hpp"

namespace decomp {

// Linear subspace of Q^n stored as the reduced row-echelon basis of its
// row space.  The representation is canonical: two subspaces are equal
// iff their stored bases are identical entry for entry.
class Subspace {
 public:
  Subspace() : ambient_(0) {}

  static Subspace zero(std::size_t ambient_dim);
  static Subspace full(std::size_t ambient_dim);
  // Span of the rows of m inside Q^{m.cols()}.
  static Subspace row_span(const Matrix& m);
  // Null space {v : m v = 0} in Q^{m.cols()}.
  static Subspace kernel(const Matrix& m);
  // Column space {m v} in Q^{m.rows()}.
  static Subspace image(const Matrix& m);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }
  // Rows form the canonical echelon basis.
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const Subspace& other) const;
  // Image under a linear map given on the ambient space.
  Subspace apply(const Matrix& m) const;

  bool operator==(const Subspace& other) const = default;

  std::string to_string() const;

 private:
  Subspace(std::size_t ambient, Matrix basis, std::vector<std::size_t> pivots)
      : ambient_(ambient), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t ambient_;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

// Vectors w in the partner space Q^{form.cols()} pairing to zero with s
// under form : Q^{ambient} x Q^{form.cols()} -> Q, (v, w) -> v^T form w.
Subspace orthogonal_complement(const Subspace& s, const Matrix& form);

// Canonical basis of the row space: the nonzero rows of the echelon form.
Matrix canonicalize(const Matrix& m);

// Quotient of the ambient space by s:
//   section   (ambient x q): columns are coset representatives,
//   projection (q x ambient): kernel is exactly s, projection*section = id.
struct Quotient {
  Matrix section;
  Matrix projection;
};
Quotient quotient_with_projection(std::size_t ambient_dim, const Subspace& s);

// Quotient total/sub for sub contained in total:
//   lift (q x ambient): rows represent the chosen basis of the quotient,
//   proj (q x ambient): coordinates map, proj * lift^T = id, proj(sub) = 0.
// proj is only meaningful on vectors of `total`.
struct Subquotient {
  std::size_t dim = 0;
  Matrix lift;
  Matrix proj;
};
Subquotient subquotient(const Subspace& total, const Subspace& sub);

}  // namespace decomp
