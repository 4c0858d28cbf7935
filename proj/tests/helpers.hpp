#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "decomp/realization.hpp"

namespace testutil {

using decomp::EtaBlocks;
using decomp::FilteredGradedSpace;
using decomp::FiltrationKind;
using decomp::Matrix;
using decomp::Rational;
using decomp::Realization;
using decomp::Subspace;

inline Matrix mat(const std::vector<std::vector<long>>& rows) { return Matrix::from_rows(rows); }

inline FilteredGradedSpace single_level(FiltrationKind kind, std::map<int, std::size_t> dims) {
  std::map<int, std::vector<Subspace>> steps;
  for (const auto& [k, n] : dims) steps[k] = {Subspace::full(n)};
  return FilteredGradedSpace(kind, 0, 0, 0, std::move(dims), std::move(steps));
}

// Projective line: H^0 and H^2 one-dimensional, operator cupping with the
// hyperplane class, perverse levels -1 and 1.
inline decomp::HLTriple projective_line() {
  std::map<int, std::size_t> dims{{0, 1}, {2, 1}};
  std::map<int, std::vector<Subspace>> steps;
  steps[0] = {Subspace::full(1), Subspace::full(1), Subspace::full(1)};
  steps[2] = {Subspace::zero(1), Subspace::zero(1), Subspace::full(1)};
  FilteredGradedSpace space(FiltrationKind::perverse, 0, -1, 1, dims, std::move(steps));
  EtaBlocks eta;
  eta.blocks[0] = mat({{1}});
  return decomp::HLTriple(std::move(space), std::move(eta));
}

// Single operator string of length three: levels -2, 0, 2 in degrees
// 0, 2, 4, each one-dimensional.
inline decomp::HLTriple string_of_length_three() {
  std::map<int, std::size_t> dims{{0, 1}, {2, 1}, {4, 1}};
  std::map<int, std::vector<Subspace>> steps;
  steps[0] = std::vector<Subspace>(5, Subspace::full(1));
  steps[2] = {Subspace::zero(1), Subspace::zero(1), Subspace::full(1), Subspace::full(1),
              Subspace::full(1)};
  steps[4] = {Subspace::zero(1), Subspace::zero(1), Subspace::zero(1), Subspace::zero(1),
              Subspace::full(1)};
  FilteredGradedSpace space(FiltrationKind::perverse, 0, -2, 2, dims, std::move(steps));
  EtaBlocks eta;
  eta.blocks[0] = mat({{1}});
  eta.blocks[2] = mat({{1}});
  return decomp::HLTriple(std::move(space), std::move(eta));
}

// Blow-down of a plane blown up at one point.  Degree-2 basis: hyperplane
// class first, exceptional class second.  Matches scenarios/blowup.scenario.
Realization blowup_realization();

// Product of two projective lines fibered over one of them.  Degree-2
// basis: section class first, fiber class second.  Matches
// scenarios/ruled.scenario.
Realization ruled_realization();

// Deterministic rng for tests, independent of the library's generator.
inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed * 2654435761u + 1); }

inline long rand_entry(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  return dist(rng);
}

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rational(rand_entry(rng, bound));
  return m;
}

// --- independent oracles ------------------------------------------------
// These reimplement the linear algebra with different algorithms and a
// different pivoting order so library results are cross-checked rather
// than compared with themselves.

// Fraction-free Bareiss determinant for integer matrices.
long long oracle_det_bareiss(const Matrix& m);

// Rank by Gaussian elimination with rightmost-pivot selection.
std::size_t oracle_rank(const Matrix& m);

// Null space basis via elimination with rightmost pivots; rows span the
// kernel.  Only the spanned space is canonical, not the basis.
std::vector<std::vector<Rational>> oracle_nullspace(const Matrix& m);

// Solves a x = b.  Returns {consistent, one particular solution, kernel
// dimension of a}.
struct OracleAffineSolve {
  bool consistent = false;
  std::vector<Rational> particular;
  std::size_t kernel_dim = 0;
};
OracleAffineSolve oracle_affine_solve(const Matrix& a, const std::vector<Rational>& b);

inline bool oracle_in_span(const std::vector<std::vector<Rational>>& span_rows,
                           const std::vector<Rational>& v, std::size_t cols) {
  Matrix stacked(span_rows.size() + 1, cols);
  Matrix plain(span_rows.size(), cols);
  for (std::size_t i = 0; i < span_rows.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      stacked.at(i, j) = span_rows[i][j];
      plain.at(i, j) = span_rows[i][j];
    }
  }
  for (std::size_t j = 0; j < cols; ++j) stacked.at(span_rows.size(), j) = v[j];
  return oracle_rank(stacked) == oracle_rank(plain);
}

}  // namespace testutil
