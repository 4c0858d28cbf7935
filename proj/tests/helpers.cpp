#include "helpers.hpp"

#include <stdexcept>

namespace testutil {

using decomp::FlagData;
using decomp::Stratum;
using decomp::SupportData;
using decomp::Symmetry;

Realization blowup_realization() {
  Realization r;
  r.label = "blowup";
  std::map<int, std::size_t> dims{{0, 1}, {2, 2}, {4, 1}};
  r.space = single_level(FiltrationKind::perverse, dims);
  r.compact_space = single_level(FiltrationKind::perverse, dims);

  EtaBlocks eta;
  eta.blocks[0] = mat({{1}, {0}});
  eta.blocks[2] = mat({{1, 0}});
  r.eta = eta;
  r.compact_eta = eta;
  for (const auto& [k, n] : dims) r.comap[k] = Matrix::identity(n);

  SupportData sup;
  sup.ambient_dim = 2;
  sup.dense_label = "plane";
  Stratum point;
  point.label = "point";
  point.dim = 0;
  point.restriction[{0, 2}] = mat({{0, 1}});
  point.restriction_compact[{0, 2}] = mat({{0, 1}});
  sup.strata.push_back(point);
  sup.pairing[{0, 0}] = mat({{1}});
  sup.pairing[{0, 2}] = mat({{1, 0}, {0, -1}});
  sup.pairing[{0, 4}] = mat({{1}});
  r.supports = sup;

  {
    std::map<int, std::vector<Subspace>> steps;
    steps[0] = {Subspace::zero(1), Subspace::zero(1), Subspace::full(1)};
    steps[2] = {Subspace::zero(2), Subspace::full(2), Subspace::full(2)};
    steps[4] = {Subspace::full(1), Subspace::full(1), Subspace::full(1)};
    r.hodge = FilteredGradedSpace(FiltrationKind::hodge, 0, -2, 0, dims, std::move(steps));
  }
  {
    std::map<int, std::vector<Subspace>> steps;
    steps[0] = std::vector<Subspace>(5, Subspace::full(1));
    steps[2] = {Subspace::zero(2), Subspace::zero(2), Subspace::full(2), Subspace::full(2),
                Subspace::full(2)};
    steps[4] = {Subspace::zero(1), Subspace::zero(1), Subspace::zero(1), Subspace::zero(1),
                Subspace::full(1)};
    r.weight = FilteredGradedSpace(FiltrationKind::weight, 0, 0, 4, dims, std::move(steps));
  }

  Symmetry flip;
  flip.label = "exceptional-flip";
  flip.blocks[0] = mat({{1}});
  flip.blocks[2] = mat({{1, 0}, {0, -1}});
  flip.blocks[4] = mat({{1}});
  r.symmetries.push_back(flip);

  FlagData flag;
  flag.restrictions.restrictions[0][0] = mat({{1}});
  flag.restrictions.restrictions[0][2] = Matrix::identity(2);
  flag.restrictions.restrictions[0][4] = mat({{1}});
  flag.restrictions.restrictions[1][2] = Matrix::identity(2);
  flag.restrictions.restrictions[1][4] = mat({{1}});
  flag.restrictions.restrictions[2][4] = mat({{1}});
  flag.restrictions.restrictions[3][0] = mat({{0}});
  flag.restrictions.corestrictions[-1][0] = mat({{1}});
  flag.restrictions.corestrictions[0][0] = mat({{1}});
  flag.restrictions.corestrictions[0][2] = Matrix::identity(2);
  flag.restrictions.corestrictions[0][4] = mat({{1}});
  flag.offsets = {{0, 1}, {2, 2}, {4, 3}};
  flag.offsets_compact = {{0, -1}, {2, 0}, {4, 0}};
  r.flag = flag;
  return r;
}

Realization ruled_realization() {
  Realization r;
  r.label = "ruled";
  std::map<int, std::size_t> dims{{0, 1}, {2, 2}, {4, 1}};

  auto make_space = [&]() {
    std::map<int, std::vector<Subspace>> steps;
    steps[0] = {Subspace::full(1), Subspace::full(1), Subspace::full(1)};
    steps[2] = {Subspace::row_span(mat({{0, 1}})), Subspace::row_span(mat({{0, 1}})),
                Subspace::full(2)};
    steps[4] = {Subspace::zero(1), Subspace::zero(1), Subspace::full(1)};
    return FilteredGradedSpace(FiltrationKind::perverse, 0, -1, 1, dims, std::move(steps));
  };
  r.space = make_space();
  r.compact_space = make_space();

  EtaBlocks eta;
  eta.blocks[0] = mat({{1}, {0}});
  eta.blocks[2] = mat({{0, 1}});
  r.eta = eta;
  r.compact_eta = eta;
  for (const auto& [k, n] : dims) r.comap[k] = Matrix::identity(n);

  SupportData sup;
  sup.ambient_dim = 2;
  sup.dense_label = "line";
  sup.pairing[{-1, 0}] = mat({{1}});
  sup.pairing[{-1, 2}] = mat({{1}});
  sup.pairing[{1, 2}] = mat({{1}});
  sup.pairing[{1, 4}] = mat({{1}});
  r.supports = sup;

  {
    std::map<int, std::vector<Subspace>> steps;
    steps[0] = {Subspace::zero(1), Subspace::zero(1), Subspace::full(1)};
    steps[2] = {Subspace::zero(2), Subspace::full(2), Subspace::full(2)};
    steps[4] = {Subspace::full(1), Subspace::full(1), Subspace::full(1)};
    r.hodge = FilteredGradedSpace(FiltrationKind::hodge, 0, -2, 0, dims, std::move(steps));
  }
  {
    std::map<int, std::vector<Subspace>> steps;
    steps[0] = std::vector<Subspace>(5, Subspace::full(1));
    steps[2] = {Subspace::zero(2), Subspace::zero(2), Subspace::full(2), Subspace::full(2),
                Subspace::full(2)};
    steps[4] = {Subspace::zero(1), Subspace::zero(1), Subspace::zero(1), Subspace::zero(1),
                Subspace::full(1)};
    r.weight = FilteredGradedSpace(FiltrationKind::weight, 0, 0, 4, dims, std::move(steps));
  }

  Symmetry twist;
  twist.label = "fiber-flip";
  twist.blocks[0] = mat({{1}});
  twist.blocks[2] = mat({{1, 0}, {0, -1}});
  twist.blocks[4] = mat({{-1}});
  r.symmetries.push_back(twist);
  return r;
}

long long oracle_det_bareiss(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("oracle_det_bareiss: square only");
  const std::size_t n = m.rows();
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& e = m.at(i, j);
      if (e.get_den() != 1) throw std::invalid_argument("oracle_det_bareiss: integer entries only");
      a[i][j] = static_cast<long long>(e.get_num().get_si());
    }
  long long prev = 1;
  long long sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

namespace {

// Elimination that picks the rightmost remaining pivot column, the
// reverse of the usual order, to decorrelate from the library.
struct Eliminated {
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivot_cols;
  std::vector<std::size_t> pivot_rows;  // parallel to pivot_cols
};

Eliminated eliminate_rightmost(std::vector<std::vector<Rational>> rows, std::size_t cols) {
  Eliminated out;
  out.rows = std::move(rows);
  std::vector<bool> used(out.rows.size(), false);
  for (std::size_t jj = cols; jj-- > 0;) {
    std::size_t pivot = out.rows.size();
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      if (!used[i] && out.rows[i][jj] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == out.rows.size()) continue;
    used[pivot] = true;
    out.pivot_cols.push_back(jj);
    out.pivot_rows.push_back(pivot);
    const Rational inv = Rational(1) / out.rows[pivot][jj];
    for (auto& v : out.rows[pivot]) v *= inv;
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
      if (i == pivot || out.rows[i][jj] == 0) continue;
      const Rational factor = out.rows[i][jj];
      for (std::size_t j = 0; j < out.rows[i].size(); ++j)
        out.rows[i][j] -= factor * out.rows[pivot][j];
    }
  }
  return out;
}

std::vector<std::vector<Rational>> to_rows(const Matrix& m, bool augment_zero = false) {
  std::vector<std::vector<Rational>> rows(m.rows(),
                                          std::vector<Rational>(m.cols() + (augment_zero ? 1 : 0)));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m.at(i, j);
  return rows;
}

}  // namespace

std::size_t oracle_rank(const Matrix& m) {
  return eliminate_rightmost(to_rows(m), m.cols()).pivot_cols.size();
}

std::vector<std::vector<Rational>> oracle_nullspace(const Matrix& m) {
  const Eliminated e = eliminate_rightmost(to_rows(m), m.cols());
  std::vector<std::size_t> pivot_row_of_col(m.cols(), m.rows());
  for (std::size_t p = 0; p < e.pivot_cols.size(); ++p)
    pivot_row_of_col[e.pivot_cols[p]] = e.pivot_rows[p];
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (pivot_row_of_col[free_col] != m.rows()) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free_col] = 1;
    for (std::size_t jj : e.pivot_cols) v[jj] = -e.rows[pivot_row_of_col[jj]][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

OracleAffineSolve oracle_affine_solve(const Matrix& a, const std::vector<Rational>& b) {
  OracleAffineSolve out;
  std::vector<std::vector<Rational>> rows = to_rows(a, true);
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i][a.cols()] = b[i];
  // eliminate over the coefficient columns only
  const Eliminated e = eliminate_rightmost(std::move(rows), a.cols());
  std::vector<bool> is_pivot_row(a.rows(), false);
  for (std::size_t i : e.pivot_rows) is_pivot_row[i] = true;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (is_pivot_row[i]) continue;
    bool zero_coeffs = true;
    for (std::size_t j = 0; j < a.cols(); ++j) zero_coeffs = zero_coeffs && e.rows[i][j] == 0;
    if (zero_coeffs && e.rows[i][a.cols()] != 0) return out;  // inconsistent
  }
  out.consistent = true;
  out.kernel_dim = a.cols() - e.pivot_cols.size();
  out.particular.assign(a.cols(), Rational(0));
  for (std::size_t p = 0; p < e.pivot_cols.size(); ++p)
    out.particular[e.pivot_cols[p]] = e.rows[e.pivot_rows[p]][a.cols()];
  return out;
}

}  // namespace testutil
