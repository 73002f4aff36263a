#include "common.hpp"
#include "morita/traces.hpp"

#include <doctest.h>

using namespace testing_support;

namespace {

BimodulePtr vector_space(const Field& f, std::size_t n) {
  auto k = ground_field(f);
  return make_bimodule(k, k, n, {Matrix::identity(f, n)}, {Matrix::identity(f, n)});
}

BimodulePtr t(const BimodulePtr& x, const BimodulePtr& y) { return tensor_over(x, y)->result; }

Matrix canonical_twist(const BimodulePtr& m) {
  // U_A (.) M -> M -> M (.) U_B
  return right_unitor_inverse(m) * left_unitor(m);
}

// Over k: sum_{i,j} of the coefficient of w_j (x) v_i in phi(v_i (x) w_j).
Scalar swap_trace_oracle(const BimodulePtr& v, const BimodulePtr& w, const Matrix& phi) {
  auto vw = tensor_over(v, w), wv = tensor_over(w, v);
  const Field& f = v->field();
  const std::size_t dv = v->dim(), dw = w->dim();
  Scalar s = Scalar::zero(f);
  for (std::size_t i = 0; i < dv; ++i)
    for (std::size_t j = 0; j < dw; ++j) {
      Vector x = vw->pure_tensor(unit_vector(f, dv, i), unit_vector(f, dw, j));
      Matrix y = wv->section * phi * Matrix::column(x, f);
      s += y(j * dv + i, 0);
    }
  return s;
}

// Permutation representation of S_n on points, from the same lexicographic listing.
std::vector<Matrix> permutation_rep(const Field& f, std::size_t n) {
  std::vector<Matrix> rho;
  for (const auto& p : permutations(n)) {
    Matrix m(f, n, n);
    for (std::size_t x = 0; x < n; ++x) m(p[x], x) = Scalar::one(f);
    rho.push_back(m);
  }
  return rho;
}

// Restriction to the sum-zero plane with basis e0 - e1, e1 - e2.
std::vector<Matrix> standard_rep(const Field& f) {
  Matrix b = Matrix::from_rows(f, {{1, 0}, {-1, 1}, {0, -1}});
  Matrix left_inv = Matrix::from_rows(f, {{1, 0, 0}, {1, 1, 0}});
  std::vector<Matrix> out;
  for (const auto& p : permutation_rep(f, 3)) out.push_back(left_inv * p * b);
  return out;
}

// Ind_H^G chi at g as a sum over left coset representatives r: chi(r^-1 g r) when it lies in H.
std::vector<Scalar> coset_oracle(const Field& f, const GroupTable& g, const std::vector<std::size_t>& h,
                                 const std::vector<Scalar>& chi_h) {
  std::vector<std::size_t> reps;
  std::vector<bool> covered(g.size(), false);
  for (std::size_t r = 0; r < g.size(); ++r) {
    if (covered[r]) continue;
    reps.push_back(r);
    for (auto x : h) covered[g[r][x]] = true;
  }
  std::vector<Scalar> out;
  for (std::size_t x = 0; x < g.size(); ++x) {
    Scalar s = Scalar::zero(f);
    for (auto r : reps) {
      std::size_t c = g[g[group_inverse(g, r)][x]][r];
      for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] == c) s += chi_h[i];
    }
    out.push_back(s);
  }
  return out;
}

std::vector<Matrix> scalar_rep(const Field& f, const std::vector<long>& values) {
  std::vector<Matrix> out;
  for (long v : values) out.push_back(Matrix::from_rows(f, {{v}}));
  return out;
}

}  // namespace

TEST_CASE("euler characteristic of a vector space is its dimension") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto chi = euler_char(right_dual(vector_space(Q, n)));
    CHECK(scalar_trace(chi) == Scalar(Q, static_cast<long>(n)));
  }
  auto chi7 = euler_char(right_dual(vector_space(F7, 9)));
  CHECK(scalar_trace(chi7) == Scalar(F7, 2));
}

TEST_CASE("euler characteristic of the unit is the identity") {
  auto suite = separable_suite();
  suite.push_back({"Q[x]/x^2", truncated_polynomial(Q, 2)});
  suite.push_back({"A2", path_algebra(Q, 2, {{0, 1}})});
  for (const auto& [name, a] : suite) {
    CAPTURE(name);
    CHECK(euler_char(right_dual(unit_bimodule(a))).matrix.is_identity());
  }
}

TEST_CASE("twisted trace of the canonical twist is the euler characteristic") {
  for (const auto& [name, a] : separable_suite()) {
    if (a->dim() > 4) continue;
    CAPTURE(name);
    auto U = unit_bimodule(a);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      auto m = random_bimodule(a, a, seed, 4);
      auto pair = right_dual(m);
      CHECK(twisted_trace(U, U, canonical_twist(m), pair).matrix == euler_char(pair).matrix);
    }
    auto pu = right_dual(U);
    CHECK(twisted_trace(U, U, canonical_twist(U), pu).matrix.is_identity());
  }
}

TEST_CASE("twisted trace is linear") {
  auto a = product_algebra(Q, 2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    auto P = random_bimodule(a, a, 3 * seed, 3), Q2 = random_bimodule(a, a, 3 * seed + 1, 3);
    auto M = random_bimodule(a, a, 3 * seed + 2, 3);
    auto pair = right_dual(M);
    Matrix f = random_bimodule_map(t(P, M), t(M, Q2), seed).matrix;
    Matrix g = random_bimodule_map(t(P, M), t(M, Q2), seed + 100).matrix;
    Scalar c(Q, mpq_class(-3, 2));
    CHECK(twisted_trace(P, Q2, f + c * g, pair).matrix ==
          twisted_trace(P, Q2, f, pair).matrix + c * twisted_trace(P, Q2, g, pair).matrix);
  }
}

TEST_CASE("trace does not depend on the duality data") {
  auto a = group_algebra(Q, cyclic_group_table(2));
  SeededInts rng(8);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto P = random_bimodule(a, a, seed, 3), M = random_bimodule(a, a, seed + 50, 4);
    auto pair = right_dual(M);
    auto other = transport_dual(pair, random_invertible(Q, pair.N->dim(), rng));
    Matrix phi = random_bimodule_map(t(P, M), t(M, P), seed).matrix;
    CHECK(twisted_trace(P, P, phi, pair).matrix == twisted_trace(P, P, phi, other).matrix);
    CHECK(euler_char(pair).matrix == euler_char(other).matrix);
  }
}

TEST_CASE("scalar trace") {
  CHECK(scalar_trace(Matrix::identity(Q, 3)) == Scalar(Q, 3));
  CHECK(scalar_trace(Matrix::from_rows(Q, {{0, 1, 5}, {0, 0, 2}, {0, 0, 0}})) == Scalar(Q, 0));
  CHECK(scalar_trace(Matrix::from_rows(Q, {{2, 0}, {0, 3}})) == Scalar(Q, 5));
  CHECK_THROWS(scalar_trace(Matrix(Q, 2, 3)));
}

TEST_CASE("iterated trace examples") {
  auto qq = product_algebra(Q, 2);
  auto U = unit_bimodule(qq);
  Matrix id = Matrix::identity(Q, t(U, U)->dim());
  CHECK(iterated_trace(U, U, id, TraceOrder::M_first) == Scalar(Q, 2));
  CHECK(iterated_trace(U, U, id, TraceOrder::N_first) == Scalar(Q, 2));

  auto m2 = matrix_algebra(Q, 2);
  auto U2 = unit_bimodule(m2);
  Matrix id2 = Matrix::identity(Q, t(U2, U2)->dim());
  CHECK(iterated_trace(U2, U2, id2, TraceOrder::M_first) == Scalar(Q, 1));
  CHECK(iterated_trace(U2, U2, id2, TraceOrder::N_first) == Scalar(Q, 1));

  auto dn = truncated_polynomial(Q, 2);
  auto Ud = unit_bimodule(dn);
  CHECK_THROWS_AS(iterated_trace(Ud, Ud, Matrix::identity(Q, 2), TraceOrder::M_first), ScopeRefusal);
}

TEST_CASE("iterated traces over the field match the swap oracle") {
  auto k = ground_field(Q);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto x = random_twist(k, seed, 3);
    // over k every linear map is a bimodule map
    SeededInts rng(seed);
    Matrix phi = random_matrix(Q, t(x.N, x.M)->dim(), t(x.M, x.N)->dim(), rng);
    Scalar oracle = swap_trace_oracle(x.M, x.N, phi);
    CHECK(iterated_trace(x.M, x.N, phi, TraceOrder::M_first) == oracle);
    CHECK(iterated_trace(x.M, x.N, phi, TraceOrder::N_first) == oracle);
  }
}

TEST_CASE("main theorem on the seeded suite") {
  for (auto a : {product_algebra(Q, 2), group_algebra(Q, cyclic_group_table(2), "Q[C2]"), matrix_algebra(Q, 2),
                 group_algebra(F7, cyclic_group_table(3), "F7[C3]")}) {
    CAPTURE(a->name());
    auto rep = check_main_theorem(a, 1, 8);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.instances.size() == 8);
    bool nonzero = false;
    for (const auto& r : rep.instances) nonzero = nonzero || r.left != "0";
    CHECK(nonzero);
  }
  CHECK(check_main_theorem(ground_field(Q), 1, 3).verdict == Verdict::pass);
  auto refused = check_main_theorem(truncated_polynomial(Q, 2), 1, 3);
  CHECK(refused.verdict == Verdict::skipped);
  CHECK(refused.instances.empty());
}

TEST_CASE("composite traces") {
  auto a = group_algebra(Q, cyclic_group_table(2), "Q[C2]");
  auto rep = check_composite_seeded(a, 1, 10);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.instances.size() == 20);

  auto U = unit_bimodule(a);
  auto pu = right_dual(U);
  auto r = check_composite(U, U, U, canonical_twist(U), canonical_twist(U), pu, pu);
  CHECK(r.pass);
  CHECK(check_composite_euler(U, U).pass);

  // across different algebras
  auto b = matrix_algebra(Q, 2);
  CHECK(check_composite_euler(random_bimodule(a, b, 3, 4), random_bimodule(b, a, 4, 4)).pass);
}

TEST_CASE("mate invariance") {
  auto rep = check_mate_seeded(product_algebra(Q, 2), 1, 20, 3);
  CHECK(rep.verdict == Verdict::pass);

  auto a = matrix_algebra(Q, 2);
  auto U = unit_bimodule(a);
  auto m = random_bimodule(a, a, 4, 8);
  auto pair = right_dual(m);
  auto r = check_mate(U, U, canonical_twist(m), pair);
  CHECK(r.pass);
  CHECK(twisted_trace(U, U, canonical_twist(m), pair).matrix == euler_char(pair).matrix);

  // over k: tr(X) = tr(X^T)
  auto V = vector_space(Q, 3);
  auto Uk = unit_bimodule(ground_field(Q));
  auto pv = right_dual(V);
  Matrix X = Matrix::from_rows(Q, {{1, 2, 0}, {3, 4, 1}, {0, 5, 6}});
  Matrix phi = right_unitor_inverse(V) * X * left_unitor(V);
  auto rk = check_mate(Uk, Uk, phi, pv);
  CHECK(rk.pass);
  CHECK(twisted_trace(Uk, Uk, phi, pv).matrix(0, 0) == scalar_trace(X));
}

TEST_CASE("character convention") {
  auto c = character_convention();
  CHECK(c == character_convention());
  CHECK(convention_name(c) == "g");
}

TEST_CASE("characters of S3") {
  auto s3 = symmetric_group_table(3);
  auto kg = group_algebra(Q, s3);
  auto inverse = character_convention() == CharacterConvention::g_inverse;
  for (const auto& rho : {permutation_rep(Q, 3), standard_rep(Q)}) {
    auto chi = character_of(representation_bimodule(kg, rho));
    for (std::size_t g = 0; g < 6; ++g) CHECK(chi[g] == scalar_trace(rho[inverse ? group_inverse(s3, g) : g]));
  }
  auto std_chi = character_of(representation_bimodule(kg, standard_rep(Q)));
  CHECK(std_chi[0] == Scalar(Q, 2));
  CHECK(std_chi[1] == Scalar(Q, 0));
  CHECK(std_chi[3] == Scalar(Q, -1));
}

TEST_CASE("characters of C3 over F7 pin the convention") {
  auto c3 = cyclic_group_table(3);
  auto kg = group_algebra(F7, c3);
  std::vector<Matrix> rho;
  for (long v : {1L, 2L, 4L}) rho.push_back(Matrix::from_rows(F7, {{v}}));
  auto chi = character_of(representation_bimodule(kg, rho));
  CHECK(chi[1] == (character_convention() == CharacterConvention::g ? Scalar(F7, 2) : Scalar(F7, 4)));
}

TEST_CASE("induction") {
  auto s3 = symmetric_group_table(3);
  std::vector<std::size_t> c2 = {0, 1};
  auto rep = check_induction(Q, s3, c2, scalar_rep(Q, {1, -1}));
  CHECK(rep.verdict == Verdict::pass);
  REQUIRE(rep.instances.size() == 2);

  // classes: identity 0, transposition 1, 3-cycle 3
  auto oracle = coset_oracle(Q, s3, c2, {Scalar(Q, 1), Scalar(Q, -1)});
  CHECK(oracle[0] == Scalar(Q, 3));
  CHECK(oracle[1] == Scalar(Q, -1));
  CHECK(oracle[3] == Scalar(Q, 0));
  CHECK(induced_character(Q, s3, c2, {Scalar(Q, 1), Scalar(Q, -1)}) == oracle);

  auto a = group_algebra(Q, s3);
  std::vector<Matrix> id1 = scalar_rep(Q, {1});
  auto trivial = check_induction(Q, s3, {0}, id1);
  CHECK(trivial.verdict == Verdict::pass);
  auto reg = coset_oracle(Q, s3, {0}, {Scalar(Q, 1)});
  CHECK(reg[0] == Scalar(Q, 6));
  for (std::size_t g = 1; g < 6; ++g) CHECK(reg[g] == Scalar(Q, 0));

  auto whole = check_induction(Q, s3, {0, 1, 2, 3, 4, 5}, scalar_rep(Q, {1, -1, -1, 1, 1, -1}));
  CHECK(whole.verdict == Verdict::pass);

  auto refused = check_induction(Field::prime(3), s3, c2, scalar_rep(Field::prime(3), {1, -1}));
  CHECK(refused.verdict == Verdict::skipped);
}

TEST_CASE("lunts identity") {
  auto m2 = matrix_algebra(Q, 2);
  auto r = check_lunts(unit_bimodule(m2));
  CHECK(r.pass);
  CHECK(r.left == "1");
  auto s3 = group_algebra(Q, symmetric_group_table(3));
  auto r3 = check_lunts(unit_bimodule(s3));
  CHECK(r3.pass);
  CHECK(r3.left == "3");
  auto rep = check_lunts_seeded(product_algebra(Q, 2), 1, 10);
  CHECK(rep.verdict == Verdict::pass);
  CHECK(rep.instances.size() == 11);
  CHECK(check_lunts_seeded(truncated_polynomial(Q, 2), 1, 2).verdict == Verdict::skipped);
}
