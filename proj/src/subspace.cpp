#include "decomp/subspace.hpp"

#include <algorithm>

#include "decomp/errors.hpp"

namespace decomp {

Subspace Subspace::zero(std::size_t ambient_dim) {
  return Subspace(ambient_dim, Matrix(0, ambient_dim), {});
}

Subspace Subspace::full(std::size_t ambient_dim) {
  std::vector<std::size_t> pivots(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
  return Subspace(ambient_dim, Matrix::identity(ambient_dim), std::move(pivots));
}

Subspace Subspace::row_span(const Matrix& m) {
  RowEchelon re = row_echelon(m);
  const std::size_t r = re.pivots.size();
  Matrix basis(r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) basis.at(i, j) = re.mat.at(i, j);
  return Subspace(m.cols(), std::move(basis), std::move(re.pivots));
}

Subspace Subspace::kernel(const Matrix& m) {
  LinearSolve s = solve(m, Matrix(m.rows(), 0));
  return row_span(s.kernel_basis);
}

Subspace Subspace::image(const Matrix& m) { return row_span(m.transpose()); }

bool Subspace::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw DimensionError("vector/ambient mismatch");
  // Reduce v against the echelon basis; membership iff the residue is zero.
  std::vector<Rational> r = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const Rational coeff = r[pivots_[i]];
    if (sgn(coeff) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) {
      Rational delta = coeff * basis_.at(i, j);
      r[j] -= delta;
    }
  }
  return std::all_of(r.begin(), r.end(), [](const Rational& x) { return sgn(x) == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DimensionError("ambient mismatch");
  for (std::size_t i = 0; i < other.basis_.rows(); ++i) {
    if (!contains(other.basis_.row_vector(i))) return false;
  }
  return true;
}

Subspace Subspace::apply(const Matrix& m) const {
  if (m.cols() != ambient_) throw DimensionError("map/ambient mismatch");
  return row_span(basis_ * m.transpose());
}

std::string Subspace::to_string() const {
  return "span" + basis_.to_string() + " in Q^" + std::to_string(ambient_);
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch");
  return Subspace::row_span(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient mismatch");
  // Null space of [A^T | -B^T] gives coefficient pairs (x, y) with
  // A^T x = B^T y; the intersection is the image of the x-part.
  const Matrix at = a.basis().transpose();
  const Matrix bt = b.basis().transpose();
  LinearSolve s = solve(hstack(at, Rational(-1) * bt), Matrix(a.ambient_dim(), 0));
  const std::size_t k = s.kernel_basis.rows();
  Matrix vectors(k, a.ambient_dim());
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < a.ambient_dim(); ++j) {
      Rational acc(0);
      for (std::size_t t = 0; t < a.dim(); ++t) acc += s.kernel_basis.at(r, t) * a.basis().at(t, j);
      vectors.at(r, j) = acc;
    }
  }
  return Subspace::row_span(vectors);
}

Subspace orthogonal_complement(const Subspace& s, const Matrix& form) {
  if (form.rows() != s.ambient_dim()) throw DimensionError("form/ambient mismatch");
  return Subspace::kernel(s.basis() * form);
}

Matrix canonicalize(const Matrix& m) { return Subspace::row_span(m).basis(); }

Quotient quotient_with_projection(std::size_t ambient_dim, const Subspace& s) {
  Subquotient sq = subquotient(Subspace::full(ambient_dim), s);
  Quotient q;
  q.section = sq.lift.transpose();
  q.projection = sq.proj;
  return q;
}

Subquotient subquotient(const Subspace& total, const Subspace& sub) {
  if (total.ambient_dim() != sub.ambient_dim()) throw DimensionError("ambient mismatch");
  if (!total.contains(sub)) throw DataError("subquotient: sub not contained in total");
  const std::size_t n = total.ambient_dim();
  // Pivot columns of sub are a subset of those of total; the lift is the
  // set of total's basis rows at the complementary pivots.
  std::vector<bool> sub_pivot(n, false);
  for (std::size_t c : sub.pivots()) sub_pivot[c] = true;
  std::vector<std::size_t> lift_rows;
  for (std::size_t i = 0; i < total.dim(); ++i) {
    if (!sub_pivot[total.pivots()[i]]) lift_rows.push_back(i);
  }
  Subquotient out;
  out.dim = lift_rows.size();
  out.lift = Matrix(out.dim, n);
  for (std::size_t r = 0; r < out.dim; ++r) {
    for (std::size_t j = 0; j < n; ++j) out.lift.at(r, j) = total.basis().at(lift_rows[r], j);
  }
  if (out.dim != total.dim() - sub.dim()) throw DataError("subquotient: pivot structure mismatch");
  // Extend [lift; sub basis] to a basis of the ambient space by standard
  // vectors at non-pivot columns of total, then invert to read off the
  // coordinate functionals dual to the lift rows.
  std::vector<bool> total_pivot(n, false);
  for (std::size_t c : total.pivots()) total_pivot[c] = true;
  Matrix extension(n - total.dim(), n);
  std::size_t e = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (!total_pivot[c]) extension.at(e++, c) = 1;
  }
  const Matrix full_basis = vstack(vstack(out.lift, sub.basis()), extension);
  Inverse inv = inverse(full_basis.transpose());
  if (!inv.ok) throw DataError("subquotient: basis extension failed");
  out.proj = Matrix(out.dim, n);
  for (std::size_t r = 0; r < out.dim; ++r)
    for (std::size_t j = 0; j < n; ++j) out.proj.at(r, j) = inv.mat.at(r, j);
  return out;
}

}  // namespace decomp
