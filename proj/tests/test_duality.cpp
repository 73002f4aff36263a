#include "common.hpp"
#include "morita/duality.hpp"

#include <doctest.h>

using namespace testing_support;

namespace {

// Independent oracle for k-vector spaces: pair each basis vector with its dual functional and
// compute eps(swap(eta(1))) = sum_i f_i(v_i) directly.
Scalar dimension_by_swap(const DualPair& p) {
  const Field& f = p.M->field();
  std::size_t dm = p.M->dim(), dn = p.N->dim();
  Matrix swap(f, dm * dn, dm * dn);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t k = 0; k < dn; ++k) swap(k * dm + i, i * dn + k) = Scalar::one(f);
  Matrix s = p.eps * p.NM->surjection * swap * p.MN->section * p.eta;
  return s(0, 0);
}

BimodulePtr vector_space(const Field& f, std::size_t n) {
  auto k = ground_field(f);
  return make_bimodule(k, k, n, {Matrix::identity(f, n)}, {Matrix::identity(f, n)});
}

bool has_invertible_intertwiner(const BimodulePtr& a, const BimodulePtr& b) {
  if (a->dim() != b->dim()) return false;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto m = random_bimodule_map(a, b, seed);
    if (rank(m.matrix) == a->dim()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("right dual of the unit bimodule") {
  for (const auto& [name, a] : separable_suite()) {
    CAPTURE(name);
    auto p = right_dual(unit_bimodule(a));
    CHECK(p.N->dim() == a->dim());
    CHECK(verify_triangles(p).ok());
    CHECK(has_invertible_intertwiner(p.N, unit_bimodule(a)));
  }
}

TEST_CASE("vector spaces: dimension is the swap composite") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto p = right_dual(vector_space(Q, n));
    CHECK(p.N->dim() == n);
    CHECK(dimension_by_swap(p) == Scalar(Q, static_cast<long>(n)));
  }
  auto p = right_dual(vector_space(F7, 9));
  CHECK(dimension_by_swap(p) == Scalar(F7, 2));
}

TEST_CASE("dual pairs of seeded bimodules pass both triangles") {
  int count = 0;
  for (const auto& [name, a] : separable_suite()) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      CAPTURE(name);
      CAPTURE(seed);
      auto m = random_bimodule(a, a, seed, 6);
      auto r = right_dual(m);
      CHECK(verify_triangles(r).ok());
      auto l = left_dual(m);
      CHECK(verify_triangles(l).ok());
      CHECK(l.N == m);
      ++count;
    }
  }
  CHECK(count >= 30);
}

TEST_CASE("dual numbers: U_A is dualizable but A is not 2-dualizable") {
  auto a = truncated_polynomial(Q, 2);
  auto p = right_dual(unit_bimodule(a));
  CHECK(verify_triangles(p).ok());
  auto two = is_two_dualizable(a);
  CHECK_FALSE(two.ok);
  CHECK_FALSE(two.C_right.has_value());
  CHECK_FALSE(two.E_left.has_value());
  CHECK(two.reason.find("not right dualizable") != std::string::npos);
  CHECK_THROWS_AS(require_two_dualizable(a), ScopeRefusal);
}

TEST_CASE("non-projective module is rejected") {
  // k = A/(x) as a right module over the dual numbers
  auto a = truncated_polynomial(Q, 2);
  auto k = ground_field(Q);
  std::vector<Matrix> r;
  for (std::size_t i = 0; i < 2; ++i) {
    Matrix m(Q, 1, 1);
    m(0, 0) = a->unit()[i];
    r.push_back(m);
  }
  auto simple = make_bimodule(k, a, 1, {Matrix::identity(Q, 1)}, r);
  CHECK_THROWS_WITH_AS(right_dual(simple), "not right dualizable (not f.g. projective as right module)",
                       DualityError);
}

TEST_CASE("corrupted coevaluation fails with a witness") {
  auto a = product_algebra(Q, 2);
  auto p = right_dual(random_bimodule(a, a, 3));
  auto bad = make_pair(p.M, p.N, Scalar(Q, -1) * p.eta, p.eps);
  auto r = verify_triangles(bad);
  CHECK_FALSE(r.left_ok);
  CHECK_FALSE(r.right_ok);
  REQUIRE(r.left_witness.has_value());
  CHECK(r.left_witness->left != r.left_witness->right);
}

TEST_CASE("simple module of M2 over the field") {
  auto a = matrix_algebra(Q, 2);
  auto k = ground_field(Q);
  std::vector<Matrix> l;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Matrix e(Q, 2, 2);
      e(i, j) = Scalar::one(Q);
      l.push_back(e);
    }
  auto col = make_bimodule(a, k, 2, l, {Matrix::identity(Q, 2)});
  auto p = right_dual(col);
  CHECK(p.N->dim() == 2);
  CHECK(verify_triangles(p).ok());
  // also projective on the left: M2 = col (+) col
  auto q = left_dual(col);
  CHECK(q.M->dim() == 2);
}

TEST_CASE("duals compose") {
  for (const auto& [name, a] : separable_suite()) {
    if (a->dim() > 4) continue;
    CAPTURE(name);
    auto m1 = random_bimodule(a, a, 11, 3), m2 = random_bimodule(a, a, 12, 3);
    auto p1 = right_dual(m1), p2 = right_dual(m2);
    auto p12 = right_dual(tensor_over(m1, m2)->result);
    CHECK(verify_triangles(p12).ok());
    auto n21 = tensor_over(p2.N, p1.N)->result;
    CHECK(has_invertible_intertwiner(p12.N, n21));
  }
}

TEST_CASE("transported pair still satisfies the triangles") {
  auto a = group_algebra(Q, cyclic_group_table(2));
  auto p = right_dual(random_bimodule(a, a, 5));
  SeededInts rng(99);
  auto q = transport_dual(p, random_invertible(Q, p.N->dim(), rng));
  CHECK(verify_triangles(q).ok());
}

TEST_CASE("mate of the unitor twist on U_A is the unitor") {
  for (const auto& [name, a] : separable_suite()) {
    if (a->dim() > 4) continue;
    CAPTURE(name);
    auto U = unit_bimodule(a);
    auto pair = right_dual(U);
    auto P = random_bimodule(a, a, 21, 4);
    Matrix phi = left_unitor_inverse(P) * right_unitor(P);  // P (.) U -> U (.) P
    Matrix mt = mate(P, P, phi, pair);                     // N (.) P -> P (.) N

    // N -> U, f -> f(1)
    HomSpace h = hom_right(U, U);
    const Field& f = a->field();
    Matrix u(f, a->dim(), h.pivots.size());
    for (std::size_t k = 0; k < h.pivots.size(); ++k) {
      Vector v = h.member(k).apply(a->unit());
      for (std::size_t r = 0; r < a->dim(); ++r) u(r, k) = v[r];
    }
    auto ui = inverse(u);
    REQUIRE(ui.has_value());
    Matrix expected = tensor_maps(P, U, P, pair.N, Matrix::identity(f, P->dim()), *ui) * right_unitor_inverse(P) *
                      left_unitor(P) * tensor_maps(pair.N, P, U, P, u, Matrix::identity(f, P->dim()));
    CHECK(mt == expected);
  }
}

TEST_CASE("mate over the field is the transpose") {
  auto V = vector_space(Q, 2);
  auto U = unit_bimodule(ground_field(Q));
  auto pair = right_dual(V);
  Matrix X = Matrix::from_rows(Q, {{1, 2}, {3, 4}});
  Matrix phi = right_unitor_inverse(V) * X * left_unitor(V);  // U (.) V -> V (.) U
  Matrix mt = mate(U, U, phi, pair);
  CHECK(left_unitor(pair.N) * mt * right_unitor_inverse(pair.N) == X.transpose());
}

TEST_CASE("one-dualizability witness") {
  auto k = ground_field(Q);
  auto wk = one_dualizability_witness(k);
  CHECK(wk.C->dim() == 1);
  CHECK(wk.E->dim() == 1);
  CHECK(wk.triangle_A.is_identity());
  CHECK(wk.triangle_Aop.is_identity());

  auto qq = one_dualizability_witness(product_algebra(Q, 2));
  CHECK(qq.C->dim() == 2);
  CHECK(qq.Ae->dim() == 4);

  for (auto a : {product_algebra(Q, 2), matrix_algebra(Q, 2), truncated_polynomial(Q, 2),
                 path_algebra(Q, 2, {{0, 1}})}) {
    CAPTURE(a->name());
    auto w = one_dualizability_witness(a);
    CHECK(w.C->dim() == a->dim());
    CHECK(w.snake_A->dim() == a->dim());
    CHECK(w.snake_Aop->dim() == a->dim());
    CHECK(rank(w.triangle_A) == a->dim());
    CHECK(rank(w.triangle_Aop) == a->dim());
    CHECK(is_intertwiner(*w.snake_A, *unit_bimodule(a), w.triangle_A));
    CHECK(is_intertwiner(*w.snake_Aop, *unit_bimodule(w.Aop), w.triangle_Aop));
  }
}

TEST_CASE("two-dualizable iff separable") {
  auto suite = separable_suite();
  suite.push_back({"Q[x]/x^2", truncated_polynomial(Q, 2)});
  suite.push_back({"A2", path_algebra(Q, 2, {{0, 1}})});
  suite.push_back({"F2[C2]", group_algebra(Field::prime(2), cyclic_group_table(2))});
  suite.push_back({"F3[C3]", group_algebra(Field::prime(3), cyclic_group_table(3))});
  for (const auto& [name, a] : suite) {
    CAPTURE(name);
    auto two = is_two_dualizable(a);
    CHECK(two.ok == a->separability().has_value());
    REQUIRE(two.C_left.has_value());
    REQUIRE(two.E_right.has_value());
    CHECK(verify_triangles(*two.C_left).ok());
    CHECK(verify_triangles(*two.E_right).ok());
    if (two.ok) {
      CHECK(verify_triangles(*two.C_right).ok());
      CHECK(verify_triangles(*two.E_left).ok());
    }
  }
  auto m2 = is_two_dualizable(matrix_algebra(Q, 2));
  CHECK(m2.ok);
}
