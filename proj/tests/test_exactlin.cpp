#include "doctest.h"
#include "morita/matrix.hpp"

#include <random>

using namespace morita;

namespace {

const Field Q = Field::rationals();

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng, int span = 3) {
  Matrix m(f, r, c);
  for (auto& x : m.entries()) x = Scalar(f, static_cast<long>(rng() % (2 * span + 1)) - span);
  return m;
}

// Determinant by cofactor expansion, used as an independent rank oracle on small matrices.
Scalar det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return Scalar::one(m.field());
  if (n == 1) return m(0, 0);
  Scalar d = Scalar::zero(m.field());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Matrix minor = m.block(1, 0, n - 1, n).columns(cols);
    Scalar t = m(0, j) * det(minor);
    if (j % 2) d -= t;
    else d += t;
  }
  return d;
}

std::size_t rank_by_minors(const Matrix& m) {
  std::size_t best = 0;
  const std::size_t R = m.rows(), C = m.cols();
  for (std::size_t rmask = 1; rmask < (1u << R); ++rmask)
    for (std::size_t cmask = 1; cmask < (1u << C); ++cmask) {
      std::vector<std::size_t> rs, cs;
      for (std::size_t i = 0; i < R; ++i)
        if (rmask >> i & 1) rs.push_back(i);
      for (std::size_t j = 0; j < C; ++j)
        if (cmask >> j & 1) cs.push_back(j);
      if (rs.size() != cs.size() || rs.size() <= best) continue;
      Matrix sub(m.field(), rs.size(), cs.size());
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) sub(i, j) = m(rs[i], cs[j]);
      if (!det(sub).is_zero()) best = rs.size();
    }
  return best;
}

}  // namespace

TEST_CASE("scalar arithmetic over Q and F_p") {
  Scalar a(Q, mpq_class(1, 2)), b(Q, mpq_class(1, 3));
  CHECK((a + b).str() == "5/6");
  CHECK((a * b).str() == "1/6");
  CHECK((a / b).str() == "3/2");
  CHECK(Scalar(Q, 4L).str() == "4");
  Field F7 = Field::prime(7);
  Scalar x(F7, 3L), y(F7, 5L);
  CHECK((x + y).residue() == 1);
  CHECK((x * y).residue() == 1);
  CHECK((x * x.inverse()).is_one());
  CHECK(Scalar(F7, -1L).residue() == 6);
  CHECK(Scalar(F7, mpq_class(1, 2)).residue() == 4);
  CHECK(x.str() == "3 mod 7");
  CHECK_THROWS_AS(x + a, FieldMismatch);
  CHECK_THROWS(Field::prime(9));
  CHECK_THROWS(Scalar::zero(Q).inverse());
}

TEST_CASE("rref examples") {
  auto r = rref(Matrix::identity(Q, 3));
  CHECK(r.reduced == Matrix::identity(Q, 3));
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.rank == 3);
  auto z = rref(Matrix(Q, 2, 5));
  CHECK(z.reduced.is_zero());
  CHECK(z.pivots.empty());
  CHECK(z.rank == 0);
  Matrix m = Matrix::from_rows(Q, {{1, 2}, {2, 4}});
  CHECK(rank(m) == 1);
  CHECK(rank_by_minors(m) == 1);
}

TEST_CASE("rref rejects mixed fields") {
  Matrix m(Q, 2, 2);
  m(0, 1) = Scalar(Field::prime(5), 1L);
  CHECK_THROWS_AS(rref(m), FieldMismatch);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(Matrix::identity(Q, 4)).empty());
  auto k = kernel_basis(Matrix(Q, 2, 3));
  REQUIRE(k.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(k[i] == unit_vector(Q, 3, i));
  auto k2 = kernel_basis(Matrix::from_rows(Q, {{1, 2}}));
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == Vector{Scalar(Q, -2L), Scalar(Q, 1L)});
}

TEST_CASE("solve examples") {
  Vector b{Scalar(Q, 5L), Scalar(Q, -1L)};
  CHECK(*solve(Matrix::identity(Q, 2), b) == b);
  CHECK_FALSE(solve(Matrix::from_rows(Q, {{0}}), {Scalar(Q, 1L)}).has_value());
  auto x = solve(Matrix::from_rows(Q, {{2, 0}, {0, 3}}), {Scalar(Q, 4L), Scalar(Q, 6L)});
  REQUIRE(x);
  CHECK(*x == Vector{Scalar(Q, 2L), Scalar(Q, 2L)});
  CHECK_THROWS(solve(Matrix::identity(Q, 2), {Scalar(Q, 1L)}));
}

TEST_CASE("solve leaves free coordinates at zero") {
  auto x = solve(Matrix::from_rows(Q, {{1, 1, 1}}), {Scalar(Q, 3L)});
  REQUIRE(x);
  CHECK(*x == Vector{Scalar(Q, 3L), Scalar(Q, 0L), Scalar(Q, 0L)});
}

TEST_CASE("quotient examples") {
  auto q0 = quotient(Q, 3, {});
  CHECK(q0.dim == 3);
  CHECK(q0.projection == Matrix::identity(Q, 3));
  auto q1 = quotient(Q, 2, {{Scalar(Q, 1L), Scalar(Q, 0L)}});
  CHECK(q1.dim == 1);
  CHECK(q1.projection == Matrix::from_rows(Q, {{0, 1}}));
  auto q2 = quotient(Q, 3, {{Scalar(Q, 1L), Scalar(Q, 1L), Scalar(Q, 0L)}, {Scalar(Q, 0L), Scalar(Q, 1L), Scalar(Q, 1L)}});
  CHECK(q2.dim == 1);
  CHECK((q2.projection * q2.section).is_identity());
}

TEST_CASE("kron examples") {
  CHECK(kron(Matrix::identity(Q, 2), Matrix::identity(Q, 3)) == Matrix::identity(Q, 6));
  Matrix g = Matrix::from_rows(Q, {{1, 2}, {3, 4}});
  CHECK(kron(Matrix::from_rows(Q, {{2}}), g) == Scalar(Q, 2L) * g);
  Matrix swap = Matrix::from_rows(Q, {{0, 1}, {1, 0}});
  Matrix expected = Matrix::from_rows(Q, {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  CHECK(kron(swap, Matrix::identity(Q, 2)) == expected);
}

TEST_CASE("inverse") {
  Matrix m = Matrix::from_rows(Q, {{2, 1}, {1, 1}});
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK((m * *inv).is_identity());
  CHECK_FALSE(inverse(Matrix::from_rows(Q, {{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("property: rref idempotent, rank-nullity, rank oracle") {
  std::mt19937_64 rng(11);
  for (const Field& f : {Q, Field::prime(7), Field::prime(2)}) {
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      Matrix m = random_matrix(f, r, c, rng, 2);
      if (t % 3 == 0) {
        // force dependent rows
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) + m(0, j);
      }
      Rref a = rref(m);
      CHECK(rref(a.reduced).reduced == a.reduced);
      auto ker = kernel_basis(m);
      CHECK(a.rank + ker.size() == c);
      for (const auto& v : ker) CHECK(is_zero(m.apply(v)));
      CHECK(a.rank == rank_by_minors(m));
    }
  }
}

TEST_CASE("property: quotient projection") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng() % 5, k = rng() % 4;
    std::vector<Vector> sub;
    for (std::size_t i = 0; i < k; ++i) sub.push_back(random_matrix(Q, n, 1, rng).col(0));
    auto q = quotient(Q, n, sub);
    CHECK(rank(q.projection) == q.dim);
    CHECK((q.projection * q.section).is_identity());
    for (const auto& v : sub) CHECK(is_zero(q.projection.apply(v)));
    std::size_t sub_rank = k ? rank(Matrix::from_columns(Q, n, sub)) : 0;
    CHECK(q.dim + sub_rank == n);
  }
}

TEST_CASE("property: kron mixed product and kron_apply") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    Matrix f1 = random_matrix(Q, 2, 3, rng), f2 = random_matrix(Q, 3, 2, rng);
    Matrix g1 = random_matrix(Q, 2, 2, rng), g2 = random_matrix(Q, 2, 3, rng);
    CHECK(kron(f1 * f2, g1 * g2) == kron(f1, g1) * kron(f2, g2));
    Matrix x = random_matrix(Q, 9, 4, rng);
    CHECK(kron_apply(f1, g2, x) == kron(f1, g2) * x);
    // associativity of kron under the left-major order
    Matrix h = random_matrix(Q, 2, 1, rng);
    CHECK(kron(kron(f1, g1), h) == kron(f1, kron(g1, h)));
  }
}

// Plain mpq Gauss-Jordan, independent of the library's elimination.
std::vector<std::vector<mpq_class>> rref_oracle(std::vector<std::vector<mpq_class>> a) {
  const std::size_t R = a.size(), C = a.empty() ? 0 : a[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && a[p][c] == 0) ++p;
    if (p == R) continue;
    std::swap(a[p], a[row]);
    mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || a[i][c] == 0) continue;
      mpq_class f = a[i][c];
      for (std::size_t j = 0; j < C; ++j) a[i][j] -= f * a[row][j];
    }
    ++row;
  }
  return a;
}

TEST_CASE("large rational rref matches a direct elimination") {
  // Big enough to go through the multi-modular path.
  std::mt19937_64 rng(5);
  const std::size_t R = 140, C = 120, K = 40;
  Matrix basis = random_matrix(Q, K, C, rng, 9), mix = random_matrix(Q, R, K, rng, 4);
  for (std::size_t j = 0; j < C; j += 7) basis(0, j) = Scalar(Q, mpq_class(1, 1 + static_cast<long>(j)));
  Matrix m = mix * basis;
  Rref r = rref(m);
  std::vector<std::vector<mpq_class>> rows(R, std::vector<mpq_class>(C));
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) rows[i][j] = m(i, j).rational();
  auto expected = rref_oracle(rows);
  CHECK(r.rank == K);
  bool same = true;
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j) same = same && r.reduced(i, j).rational() == expected[i][j];
  CHECK(same);
}
