#include <doctest.h>

#include "decomp/subspace.hpp"

#include "../helpers.hpp"

using namespace decomp;
using testutil::mat;

TEST_CASE("kernel of a rank-one row is a plane") {
  const Matrix m = mat({{1, 2, 3}});
  const Subspace k = Subspace::kernel(m);
  CHECK(k.dim() == 2);
  for (std::size_t i = 0; i < k.basis().rows(); ++i) {
    CHECK((m * k.basis().row(i).transpose()).is_zero());
  }
  CHECK(Subspace::kernel(Matrix(2, 2)) == Subspace::full(2));
  CHECK(Subspace::kernel(Matrix::identity(2)) == Subspace::zero(2));
}

TEST_CASE("image of a column is its span") {
  CHECK(Subspace::image(mat({{1}, {2}})) == Subspace::row_span(mat({{1, 2}})));
}

TEST_CASE("span bases are canonical regardless of presentation") {
  const Subspace a = Subspace::row_span(mat({{2, 4}}));
  const Subspace b = Subspace::row_span(mat({{1, 2}, {3, 6}}));
  CHECK(a == b);
  CHECK(a.basis() == mat({{1, 2}}));
}

TEST_CASE("coordinate axes intersect in zero") {
  const Subspace x = Subspace::row_span(mat({{1, 0}}));
  const Subspace y = Subspace::row_span(mat({{0, 1}}));
  CHECK(intersect(x, y) == Subspace::zero(2));
  CHECK(sum(x, y) == Subspace::full(2));
}

TEST_CASE("intersection obeys the dimension formula against a rank oracle") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto rng = testutil::test_rng(400 + seed);
    Subspace a = Subspace::row_span(testutil::random_matrix(rng, 3, 5, 3));
    Subspace b = Subspace::row_span(testutil::random_matrix(rng, 3, 5, 3));
    if (a.dim() != 3 || b.dim() != 3) continue;
    const std::size_t sum_dim = testutil::oracle_rank(vstack(a.basis(), b.basis()));
    CHECK(intersect(a, b).dim() == a.dim() + b.dim() - sum_dim);
    CHECK(intersect(a, b).dim() >= 1);
    CHECK(sum(a, b).dim() == sum_dim);
  }
}

TEST_CASE("orthogonal complement of zero is everything") {
  CHECK(orthogonal_complement(Subspace::zero(2), Matrix::identity(2)) == Subspace::full(2));
}

TEST_CASE("orthogonal complement under an indefinite diagonal form") {
  const Matrix form = mat({{1, 0}, {0, -1}});
  const Subspace s = Subspace::row_span(mat({{1, 0}}));
  CHECK(orthogonal_complement(s, form) == Subspace::row_span(mat({{0, 1}})));
}

TEST_CASE("quotient by the zero subspace is the identity") {
  const Quotient q = quotient_with_projection(2, Subspace::zero(2));
  CHECK(q.projection.is_identity());
}

TEST_CASE("quotient by the full space has dimension zero") {
  const Quotient q = quotient_with_projection(2, Subspace::full(2));
  CHECK(q.projection.rows() == 0);
}

TEST_CASE("quotient of the plane by a diagonal line") {
  const Subspace s = Subspace::row_span(mat({{1, 1}}));
  const Quotient q = quotient_with_projection(2, s);
  REQUIRE(q.projection.rows() == 1);
  CHECK((q.projection * mat({{1}, {1}})).is_zero());
  CHECK(q.projection * q.section == Matrix::identity(1));
}

TEST_CASE("subquotient projection kills the denominator and inverts the lift") {
  const Subspace total = Subspace::full(3);
  const Subspace sub = Subspace::row_span(mat({{1, 0, 0}}));
  const Subquotient sq = subquotient(total, sub);
  CHECK(sq.dim == 2);
  CHECK(sq.proj * sq.lift.transpose() == Matrix::identity(2));
  CHECK((sq.proj * mat({{5}, {0}, {0}})).is_zero());
}

TEST_CASE("containment and membership are exact") {
  const Subspace s = Subspace::row_span(mat({{1, 2, 0}, {0, 0, 1}}));
  CHECK(s.contains({Rational(2), Rational(4), Rational(7)}));
  CHECK_FALSE(s.contains({Rational(1), Rational(0), Rational(0)}));
  CHECK(s.contains(Subspace::row_span(mat({{1, 2, 3}}))));
  CHECK(Subspace::full(3).contains(s));
}

TEST_CASE("applying an invertible map preserves dimension") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto rng = testutil::test_rng(500 + seed);
    Matrix g = testutil::random_matrix(rng, 4, 4, 2);
    for (std::size_t i = 0; i < 4; ++i) g.at(i, i) += Rational(10);
    const Subspace s = Subspace::row_span(testutil::random_matrix(rng, 2, 4, 3));
    const Subspace image = s.apply(g);
    CHECK(image.dim() == s.dim());
    for (std::size_t i = 0; i < s.basis().rows(); ++i) {
      CHECK(image.contains((g * s.basis().row(i).transpose()).column_vector(0)));
    }
  }
}
