#include "common.hpp"
#include "morita/umbra.hpp"

#include <doctest.h>

using namespace testing_support;

namespace {

void require_pass(const TheoremReport& r) {
  for (const auto& i : r.instances) {
    CAPTURE(i.description);
    CAPTURE(i.seed);
    CHECK(i.pass);
  }
  CHECK(r.passed());
}

}  // namespace

TEST_CASE("umbra over the ground field is trivial") {
  auto k = ground_field(Q);
  auto u = build_umbra(k);
  auto U = unit_bimodule(k);
  CHECK(u.sh(U)->dim() == 1);
  CHECK(u.csh(U)->dim() == 1);
  CHECK(u.esh(U)->dim() == 1);
  CHECK(u.dsh(U)->dim() == 1);
  CHECK(u.iunit.is_identity());
  CHECK(u.ounit.is_identity());
  auto V = make_bimodule(k, k, 3, {Matrix::identity(Q, 3)}, {Matrix::identity(Q, 3)});
  CHECK(u.sh(V)->dim() == 3);
  CHECK(u.dsh(V)->dim() == 3);
  CHECK(u.spl(U, U).is_identity());
  CHECK(u.uspl(U, U).is_identity());
}

TEST_CASE("umbra dimensions for QxQ and M2") {
  auto qq = build_umbra(product_algebra(Q, 2));
  auto U = unit_bimodule(qq.A);
  CHECK(qq.sh(U)->dim() == 2);
  CHECK(qq.dsh(U)->dim() == 2);

  auto m2 = build_umbra(matrix_algebra(Q, 2));
  auto U2 = unit_bimodule(m2.A);
  CHECK(m2.sh(U2)->dim() == 1);
  CHECK(m2.csh(U2)->dim() == 1);
  CHECK(m2.esh(U2)->dim() == 1);
  CHECK(rank(m2.iunit) == 1);
  CHECK(rank(m2.ounit) == 1);
}

TEST_CASE("umbra refuses non-separable algebras") {
  CHECK_THROWS_AS(build_umbra(truncated_polynomial(Q, 2)), ScopeRefusal);
}

TEST_CASE("comparison with hh0 is invertible") {
  for (auto a : {product_algebra(Q, 2), matrix_algebra(Q, 2), group_algebra(Q, cyclic_group_table(2))}) {
    CAPTURE(a->name());
    auto u = build_umbra(a);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto m = random_bimodule(a, a, seed, 4);
      Matrix k = u.sh_to_hh0(m), d = u.dsh_to_hh0(m);
      CHECK(k.rows() == k.cols());
      CHECK(rank(k) == k.rows());
      CHECK(d.rows() == d.cols());
      CHECK(rank(d) == d.rows());
    }
  }
}

TEST_CASE("penumbra squares on units") {
  auto u = build_umbra(product_algebra(Q, 2));
  auto U = unit_bimodule(u.A);
  require_pass(check_penumbra_axioms(u, U, U, U));
  require_pass(check_umbra_square(u, U, U, U));
}

TEST_CASE("penumbra squares on seeded triples") {
  auto a = group_algebra(Q, cyclic_group_table(2), "Q[C2]");
  auto u = build_umbra(a);
  for (std::uint64_t s = 1; s <= 2; ++s) {
    auto M = random_bimodule(a, a, 3 * s + 1, 4), N = random_bimodule(a, a, 3 * s + 2, 4);
    auto P = random_bimodule(a, a, 3 * s + 3, 4);
    require_pass(check_penumbra_axioms(u, M, N, P, s));
  }
}

TEST_CASE("umbra square on seeded triples") {
  for (auto a : {product_algebra(Q, 2), matrix_algebra(Q, 2)}) {
    CAPTURE(a->name());
    auto u = build_umbra(a);
    for (std::uint64_t s = 1; s <= 3; ++s) {
      auto M = random_bimodule(a, a, 3 * s + 1, 4), N = random_bimodule(a, a, 3 * s + 2, 4);
      auto P = random_bimodule(a, a, 3 * s + 3, 4);
      require_pass(check_umbra_square(u, M, N, P, s));
    }
  }
}

TEST_CASE("penumbra dual pairs") {
  auto qq = build_umbra(product_algebra(Q, 2));
  auto pq = check_penumbra_dual(qq, right_dual(unit_bimodule(qq.A)));
  require_pass(pq);
  auto k = build_umbra(ground_field(Q));
  require_pass(check_penumbra_dual(k, right_dual(unit_bimodule(k.A))));
  auto m2 = build_umbra(matrix_algebra(Q, 2));
  for (std::uint64_t s = 1; s <= 5; ++s) require_pass(check_penumbra_dual(m2, right_dual(random_bimodule(m2.A, m2.A, s, 8)), s));
}

TEST_CASE("corrupted data is caught") {
  auto a = product_algebra(Q, 2);
  auto u = build_umbra(a);
  auto M = random_bimodule(a, a, 4, 4), N = random_bimodule(a, a, 5, 4), P = random_bimodule(a, a, 6, 4);
  u.corruption = UmbraCorruption::splitting;
  auto r = check_penumbra_axioms(u, M, N, P);
  CHECK(r.verdict == Verdict::fail);
  bool witnessed = false;
  for (const auto& i : r.instances) witnessed = witnessed || (!i.pass && i.witness);
  CHECK(witnessed);
  u.corruption = UmbraCorruption::theta;
  auto s = check_umbra_square(u, M, N, P);
  CHECK(s.verdict == Verdict::fail);
  CHECK(s.instances.at(0).witness);
}

TEST_CASE("U_A~ is the unit bimodule of the enveloping algebra") {
  for (auto a : {product_algebra(Q, 2), matrix_algebra(Q, 2)}) {
    auto u = build_umbra(a);
    auto ext = external_tensor(unit_bimodule(a), unit_bimodule(u.Aop));
    auto ue = unit_bimodule(u.Ae);
    CHECK(ext->left_actions() == ue->left_actions());
    CHECK(ext->right_actions() == ue->right_actions());
    CHECK(u.tilde(unit_bimodule(a)) == ue);
  }
}

TEST_CASE("seeded umbra run") {
  auto u = build_umbra(product_algebra(Q, 2));
  auto r = check_umbra_seeded(u, 1, 3);
  CHECK(r.instances.size() == 3 * 13);
  require_pass(r);
}
