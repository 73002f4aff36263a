#include "common.hpp"
#include "doctest.h"

using namespace testing_support;

namespace {

// Permutation sending coordinate (a,b,c,d) of dims (p,q,r,s) to (a,c,b,d).
Matrix middle_swap(const Field& f, std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
  Matrix m(f, p * q * r * s, p * q * r * s);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < q; ++b)
      for (std::size_t c = 0; c < r; ++c)
        for (std::size_t d = 0; d < s; ++d) m(((a * r + c) * q + b) * s + d, ((a * q + b) * r + c) * s + d) = Scalar::one(f);
  return m;
}

}  // namespace

TEST_CASE("unit bimodules") {
  CHECK(unit_bimodule(ground_field(Q))->dim() == 1);
  auto c2 = group_algebra(Q, cyclic_group_table(2));
  auto u = unit_bimodule(c2);
  CHECK(u->left_action(1) == c2->left_mult(1));
  auto m2 = matrix_algebra(Q, 2);
  auto um = unit_bimodule(m2);
  CHECK(um->dim() == 4);
  CHECK_NOTHROW(um->validate());
}

TEST_CASE("bimodule validation rejects broken actions") {
  auto c2 = group_algebra(Q, cyclic_group_table(2));
  Matrix g = Matrix::from_rows(Q, {{0, 1}, {1, 0}});
  Matrix bad = Matrix::from_rows(Q, {{2, 0}, {0, 1}});
  auto k = ground_field(Q);
  CHECK_NOTHROW(make_bimodule(c2, k, 2, {Matrix::identity(Q, 2), g}, {Matrix::identity(Q, 2)}));
  CHECK_THROWS_AS(make_bimodule(c2, k, 2, {Matrix::identity(Q, 2), bad}, {Matrix::identity(Q, 2)}), BimoduleError);
  CHECK_THROWS_AS(make_bimodule(c2, c2, 2, {Matrix::identity(Q, 2), g}, {Matrix::identity(Q, 2), bad}), BimoduleError);
}

TEST_CASE("unitors are bimodule isomorphisms") {
  for (const auto& [name, a] : separable_suite()) {
    auto m = random_bimodule(a, a, 3);
    auto ul = tensor_over(unit_bimodule(a), m);
    auto ur = tensor_over(m, unit_bimodule(a));
    CHECK(ul->result->dim() == m->dim());
    CHECK(ur->result->dim() == m->dim());
    Matrix l = left_unitor(m), r = right_unitor(m);
    CHECK(is_intertwiner(*ul->result, *m, l));
    CHECK(is_intertwiner(*ur->result, *m, r));
    CHECK((l * left_unitor_inverse(m)).is_identity());
    CHECK((left_unitor_inverse(m) * l).is_identity());
    CHECK((r * right_unitor_inverse(m)).is_identity());
  }
}

TEST_CASE("e1 A tensor A e2 vanishes over QxQ") {
  auto a = product_algebra(Q, 2);
  auto e1A = span_bimodule(a, a->basis(0), 0);
  auto Ae2 = span_bimodule(a, a->basis(1), 1);
  CHECK(tensor_over(e1A, Ae2)->result->dim() == 0);
  CHECK(tensor_over(e1A, e1A)->result->dim() == 1);
}

TEST_CASE("tensor_over rejects mismatched algebras") {
  auto m = unit_bimodule(product_algebra(Q, 2));
  auto n = unit_bimodule(group_algebra(Q, cyclic_group_table(3)));
  CHECK_THROWS_AS(tensor_over(m, n), BimoduleError);
}

TEST_CASE("hom_right examples") {
  auto c2 = group_algebra(Q, cyclic_group_table(2));
  auto u = unit_bimodule(c2);
  auto h = hom_right(u, u);
  CHECK(h.result->dim() == 2);
  // f -> f(1) is an isomorphism onto B
  Matrix ev(Q, 2, 2);
  for (std::size_t t = 0; t < 2; ++t) {
    Vector v = h.member(t).apply(c2->unit());
    for (std::size_t s = 0; s < 2; ++s) ev(s, t) = v[s];
  }
  CHECK(rank(ev) == 2);
  auto m = random_bimodule(c2, c2, 8);
  auto hm = hom_right(m, m);
  CHECK(hm.coordinates(Matrix::identity(Q, m->dim())).size() == hm.result->dim());
  CHECK(hm.member_of(hm.coordinates(Matrix::identity(Q, m->dim()))).is_identity());
  auto a = product_algebra(Q, 2);
  auto e1A = span_bimodule(a, a->basis(0), 0);
  CHECK(hom_right(e1A, unit_bimodule(a)).result->dim() == 1);
  CHECK_NOTHROW(hom_right(e1A, unit_bimodule(a)).result->validate());
}

TEST_CASE("external tensor") {
  auto a = product_algebra(Q, 2);
  auto b = group_algebra(Q, cyclic_group_table(2));
  auto ext = external_tensor(unit_bimodule(a), unit_bimodule(b));
  auto u = unit_bimodule(tensor_algebra(a, b));
  CHECK(ext->dim() == u->dim());
  CHECK(ext->left_actions() == u->left_actions());
  CHECK(ext->right_actions() == u->right_actions());
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto m = random_bimodule(a, a, seed, 4), n = random_bimodule(b, b, seed + 10, 4);
    auto e = external_tensor(m, n);
    CHECK(e->dim() == m->dim() * n->dim());
    CHECK_NOTHROW(e->validate());
  }
}

TEST_CASE("tensorator between external and internal tensors") {
  auto a = product_algebra(Q, 2);
  auto b = group_algebra(Q, cyclic_group_table(2));
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto m = random_bimodule(a, a, seed, 3), m2 = random_bimodule(a, a, seed + 5, 3);
    auto n = random_bimodule(b, b, seed + 9, 3), n2 = random_bimodule(b, b, seed + 13, 3);
    auto lhs = tensor_over(external_tensor(m, n), external_tensor(m2, n2));
    auto mm = tensor_over(m, m2), nn = tensor_over(n, n2);
    auto rhs = external_tensor(mm->result, nn->result);
    Matrix swap = middle_swap(Q, m->dim(), n->dim(), m2->dim(), n2->dim());
    Matrix t = kron(mm->surjection, nn->surjection) * swap * lhs->section;
    CHECK(is_intertwiner(*lhs->result, *rhs, t));
    CHECK(t.rows() == t.cols());
    CHECK(inverse(t).has_value());
  }
}

TEST_CASE("base change") {
  auto c2 = group_algebra(Q, cyclic_group_table(2));
  auto id = base_change(c2, c2, Matrix::identity(Q, 2));
  CHECK(id->left_actions() == unit_bimodule(c2)->left_actions());
  CHECK(id->right_actions() == unit_bimodule(c2)->right_actions());
  auto m2 = matrix_algebra(Q, 2);
  auto k = ground_field(Q);
  auto unit_map = base_change(k, m2, Matrix::column(m2->unit(), Q));
  CHECK(unit_map->dim() == 4);
  CHECK(unit_map->right_algebra()->dim() == 1);
  // C2 = {e, (0 1)} inside S3; (0 1) is permutation [1,0,2], index 2 in lexicographic order
  auto s3 = group_algebra(Q, symmetric_group_table(3));
  Matrix incl(Q, 6, 2);
  incl(0, 0) = Scalar::one(Q);
  incl(2, 1) = Scalar::one(Q);
  auto bc = base_change(c2, s3, incl);
  CHECK(bc->dim() == 6);
  CHECK_NOTHROW(bc->validate());
  Matrix bad(Q, 6, 2);
  bad(0, 0) = Scalar::one(Q);
  bad(4, 1) = Scalar::one(Q);
  CHECK_THROWS_AS(base_change(c2, s3, bad), BimoduleError);
}

TEST_CASE("random maps and intertwiner spaces") {
  auto m2 = matrix_algebra(Q, 2);
  CHECK(intertwiner_basis(unit_bimodule(m2), unit_bimodule(m2)).size() == 1);
  auto c2 = group_algebra(Q, cyclic_group_table(2));
  auto m = random_bimodule(c2, c2, 21), n = random_bimodule(c2, c2, 22);
  auto f1 = random_bimodule_map(m, n, 5), f2 = random_bimodule_map(m, n, 5), f3 = random_bimodule_map(m, n, 6);
  CHECK(f1.matrix == f2.matrix);
  CHECK(is_intertwiner(*m, *n, f1.matrix));
  CHECK(is_intertwiner(*m, *n, f3.matrix));
  // non-separable algebras go through the explicit intertwiner basis
  auto d = truncated_polynomial(Q, 2);
  auto u = unit_bimodule(d);
  auto g = random_bimodule_map(u, u, 3);
  CHECK(is_intertwiner(*u, *u, g.matrix));
}

TEST_CASE("random bimodules over the suite are valid and seed-determined") {
  for (const auto& [name, a] : separable_suite())
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      auto m = random_bimodule(a, a, seed);
      CHECK_NOTHROW(m->validate());
      CHECK(m->dim() > 0);
      auto again = random_bimodule(a, a, seed);
      CHECK(m->left_actions() == again->left_actions());
      auto k = ground_field(a->field());
      auto v = random_bimodule(a, k, seed);
      CHECK_NOTHROW(v->validate());
    }
}

TEST_CASE("associator is a natural isomorphism and pure tensors are balanced") {
  for (const auto& [name, a] : separable_suite()) {
    if (a->dim() > 4) continue;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto x = random_bimodule(a, a, seed, 4), y = random_bimodule(a, a, seed + 40, 4), z = random_bimodule(a, a, seed + 80, 4);
      auto xy = tensor_over(x, y);
      auto xy_z = tensor_over(xy->result, z);
      auto yz = tensor_over(y, z);
      auto x_yz = tensor_over(x, yz->result);
      Matrix as = associator(x, y, z), inv = associator_inverse(x, y, z);
      CHECK(is_intertwiner(*xy_z->result, *x_yz->result, as));
      CHECK((as * inv).is_identity());
      CHECK((inv * as).is_identity());
      // on pure tensors: (x (x) y) (x) z -> x (x) (y (x) z)
      SeededInts rng(seed);
      Vector u = random_matrix(a->field(), x->dim(), 1, rng).col(0);
      Vector v = random_matrix(a->field(), y->dim(), 1, rng).col(0);
      Vector w = random_matrix(a->field(), z->dim(), 1, rng).col(0);
      CHECK(as.apply(xy_z->pure_tensor(xy->pure_tensor(u, v), w)) == x_yz->pure_tensor(u, yz->pure_tensor(v, w)));
      // balancedness
      for (std::size_t b = 0; b < a->dim(); ++b)
        CHECK(xy->pure_tensor(x->right_action(b).apply(u), v) == xy->pure_tensor(u, y->left_action(b).apply(v)));
    }
  }
}

TEST_CASE("functoriality of the tensor of maps") {
  auto a = group_algebra(Q, cyclic_group_table(2));
  auto m = random_bimodule(a, a, 1, 4), n = random_bimodule(a, a, 2, 4);
  auto m2 = random_bimodule(a, a, 3, 4), n2 = random_bimodule(a, a, 4, 4);
  auto f = random_bimodule_map(m, m2, 1).matrix, g = random_bimodule_map(n, n2, 2).matrix;
  auto f2 = random_bimodule_map(m2, m, 3).matrix, g2 = random_bimodule_map(n2, n, 4).matrix;
  Matrix lhs = tensor_maps(m2, n2, m, n, f2, g2) * tensor_maps(m, n, m2, n2, f, g);
  CHECK(lhs == tensor_maps(m, n, m, n, f2 * f, g2 * g));
  CHECK(tensor_maps(m, n, m, n, Matrix::identity(Q, m->dim()), Matrix::identity(Q, n->dim())).is_identity());
  CHECK(is_intertwiner(*tensor_over(m, n)->result, *tensor_over(m2, n2)->result, tensor_maps(m, n, m2, n2, f, g)));
}
