#include "decomp/matrix.hpp"

#include <sstream>
#include <utility>

#include "decomp/errors.hpp"

namespace decomp {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged row list");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rational(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::string>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows[0].size() : 0;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged row list");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rational_from_string(rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<std::vector<Rational>>& rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionError("ragged row list");
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::row(std::size_t i) const {
  Matrix r(1, cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
  return r;
}

std::vector<Rational> Matrix::row_vector(std::size_t i) const {
  std::vector<Rational> v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

std::vector<Rational> Matrix::column_vector(std::size_t j) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void Matrix::set_row(std::size_t i, const std::vector<Rational>& values) {
  if (values.size() != cols_) throw DimensionError("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) at(i, j) = values[j];
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (sgn(e) != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != Rational(i == j ? 1 : 0)) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << rational_to_string(at(i, j));
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference shape mismatch");
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a.at(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    }
  }
  return c;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
  return c;
}

std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector shape mismatch");
  std::vector<Rational> w(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w[i] += a.at(i, j) * v[j];
  return w;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols() && top.rows() != 0 && bottom.rows() != 0)
    throw DimensionError("vstack column mismatch");
  const std::size_t cols = top.rows() ? top.cols() : bottom.cols();
  Matrix m(top.rows() + bottom.rows(), cols);
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = top.at(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(top.rows() + i, j) = bottom.at(i, j);
  return m;
}

Matrix hstack(const Matrix& left, const Matrix& right) {
  if (left.rows() != right.rows() && left.cols() != 0 && right.cols() != 0)
    throw DimensionError("hstack row mismatch");
  const std::size_t rows = left.cols() ? left.rows() : right.rows();
  Matrix m(rows, left.cols() + right.cols());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < left.cols(); ++j) m.at(i, j) = left.at(i, j);
    for (std::size_t j = 0; j < right.cols(); ++j) m.at(i, left.cols() + j) = right.at(i, j);
  }
  return m;
}

namespace {

// Row reduction restricted to pivoting within the first `pivot_cols`
// columns; trailing columns are carried along (used for augmented solves).
RowEchelon reduce(const Matrix& m, std::size_t pivot_cols) {
  RowEchelon result{m, {}};
  Matrix& a = result.mat;
  std::size_t target_row = 0;
  for (std::size_t col = 0; col < pivot_cols && target_row < a.rows(); ++col) {
    std::size_t pivot_row = target_row;
    while (pivot_row < a.rows() && sgn(a.at(pivot_row, col)) == 0) ++pivot_row;
    if (pivot_row == a.rows()) continue;
    if (pivot_row != target_row) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(pivot_row, j), a.at(target_row, j));
    }
    const Rational inv_pivot = 1 / a.at(target_row, col);
    for (std::size_t j = col; j < a.cols(); ++j) {
      Rational scaled = a.at(target_row, j) * inv_pivot;
      a.at(target_row, j) = scaled;
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == target_row || sgn(a.at(i, col)) == 0) continue;
      const Rational factor = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) {
        Rational delta = factor * a.at(target_row, j);
        a.at(i, j) -= delta;
      }
    }
    result.pivots.push_back(col);
    ++target_row;
  }
  return result;
}

}  // namespace

RowEchelon row_echelon(const Matrix& m) { return reduce(m, m.cols()); }

std::size_t rank(const Matrix& m) { return row_echelon(m).pivots.size(); }

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of non-square matrix");
  Matrix a = m;
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    while (pivot_row < n && sgn(a.at(pivot_row, col)) == 0) ++pivot_row;
    if (pivot_row == n) return Rational(0);
    if (pivot_row != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(pivot_row, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    const Rational inv_pivot = 1 / a.at(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (sgn(a.at(i, col)) == 0) continue;
      Rational factor = a.at(i, col) * inv_pivot;
      for (std::size_t j = col; j < n; ++j) {
        Rational delta = factor * a.at(col, j);
        a.at(i, j) -= delta;
      }
    }
  }
  return det;
}

LinearSolve solve(const Matrix& a, const Matrix& rhs) {
  if (a.rows() != rhs.rows()) throw DimensionError("solve shape mismatch");
  const std::size_t n = a.cols();
  RowEchelon re = reduce(hstack(a, rhs), n);
  LinearSolve out;
  out.consistent = true;
  // A row whose leading entry lies in the augmented block is inconsistent.
  for (std::size_t i = re.pivots.size(); i < re.mat.rows(); ++i) {
    for (std::size_t j = n; j < re.mat.cols(); ++j) {
      if (sgn(re.mat.at(i, j)) != 0) out.consistent = false;
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : re.pivots) is_pivot[c] = true;
  if (out.consistent) {
    out.particular = Matrix(n, rhs.cols());
    for (std::size_t t = 0; t < re.pivots.size(); ++t) {
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        out.particular.at(re.pivots[t], j) = re.mat.at(t, n + j);
      }
    }
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix kernel(free_cols.size(), n);
  for (std::size_t r = 0; r < free_cols.size(); ++r) {
    kernel.at(r, free_cols[r]) = 1;
    for (std::size_t t = 0; t < re.pivots.size(); ++t) {
      kernel.at(r, re.pivots[t]) = -re.mat.at(t, free_cols[r]);
    }
  }
  out.kernel_basis = kernel;
  return out;
}

Inverse inverse(const Matrix& m) {
  Inverse out;
  if (m.rows() != m.cols()) return out;
  LinearSolve s = solve(m, Matrix::identity(m.rows()));
  if (!s.consistent || s.kernel_basis.rows() != 0) return out;
  out.ok = true;
  out.mat = s.particular;
  return out;
}

}  // namespace decomp
