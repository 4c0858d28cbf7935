#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "decomp/rational.hpp"

namespace decomp {

// Dense matrix over the rationals.  Vectors are columns; a matrix with
// r rows and c cols maps Q^c -> Q^r.  Zero-extent matrices are legal and
// behave as the unique map to or from the zero space.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n);
  // Rows given as integer or "p/q" string literals.
  static Matrix from_rows(const std::vector<std::vector<long>>& rows);
  static Matrix from_rows(const std::vector<std::vector<std::string>>& rows);
  static Matrix from_rows(std::size_t cols, const std::vector<std::vector<Rational>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix row(std::size_t i) const;
  std::vector<Rational> row_vector(std::size_t i) const;
  std::vector<Rational> column_vector(std::size_t j) const;
  void set_row(std::size_t i, const std::vector<Rational>& values);

  bool is_zero() const;
  bool is_identity() const;

  bool operator==(const Matrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> entries_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& v);

// Stacks rows (same cols) or concatenates columns (same rows).
Matrix vstack(const Matrix& top, const Matrix& bottom);
Matrix hstack(const Matrix& left, const Matrix& right);

struct RowEchelon {
  Matrix mat;                       // reduced row-echelon form, zero rows kept
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

// Reduced row-echelon form with unit pivots; deterministic.
RowEchelon row_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);

struct LinearSolve {
  bool consistent = false;
  Matrix particular;    // cols(a) x cols(rhs); valid when consistent
  Matrix kernel_basis;  // rows span the null space of a
};

// Solves a * x = rhs column by column.
LinearSolve solve(const Matrix& a, const Matrix& rhs);

// Nonempty iff the matrix is square and invertible.
struct Inverse {
  bool ok = false;
  Matrix mat;
};
Inverse inverse(const Matrix& m);

}  // namespace decomp
