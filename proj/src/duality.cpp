#include "morita/duality.hpp"

#include <functional>

namespace morita {

namespace {

BimodulePtr t(const BimodulePtr& x, const BimodulePtr& y) { return tensor_over(x, y)->result; }

Matrix eye(const BimodulePtr& m) { return Matrix::identity(m->field(), m->dim()); }

// Solves for x in the (A,A)-bimodule X with block(j) * x = e_j for every j < d and x central,
// then returns the map a -> a x from U_A.
std::optional<Matrix> coevaluation(const TensorWitness& w, std::size_t d,
                                   const std::function<Matrix(std::size_t)>& block) {
  const Bimodule& X = *w.result;
  const Field& f = X.field();
  std::vector<Matrix> rows;
  Vector rhs;
  for (std::size_t j = 0; j < d; ++j) {
    rows.push_back(block(j) * w.section);
    Vector e = unit_vector(f, d, j);
    rhs.insert(rhs.end(), e.begin(), e.end());
  }
  for (auto g : X.left_algebra()->generators()) {
    rows.push_back(X.left_action(g) - X.right_action(g));
    Vector z = zero_vector(f, X.dim());
    rhs.insert(rhs.end(), z.begin(), z.end());
  }
  auto x = solve(vstack(rows), rhs);
  if (!x) return std::nullopt;
  const AlgebraPtr& A = X.left_algebra();
  Matrix eta(f, X.dim(), A->dim());
  for (std::size_t i = 0; i < A->dim(); ++i) {
    Vector col = X.left_action(i).apply(*x);
    for (std::size_t r = 0; r < X.dim(); ++r) eta(r, i) = col[r];
  }
  return eta;
}

void check_constructed(const DualPair& p) {
  if (!verify_triangles(p).ok()) throw std::logic_error("constructed dual pair fails a triangle identity");
}

// Sum over a of a e c a' style products: value of the cyclic word on basis indices.
Vector word(const Algebra& a, std::initializer_list<std::size_t> idx) {
  Vector v = a.unit();
  for (auto i : idx) v = a.multiply(v, a.basis(i));
  return v;
}

}  // namespace

DualPair make_pair(const BimodulePtr& m, const BimodulePtr& n, Matrix eta, Matrix eps) {
  if (!same_algebra(m->right_algebra(), n->left_algebra()) || !same_algebra(m->left_algebra(), n->right_algebra()))
    throw DualityError("make_pair: M and N are not opposite 1-cells");
  DualPair p{m, n, tensor_over(m, n), tensor_over(n, m), std::move(eta), std::move(eps)};
  if (p.eta.rows() != p.MN->result->dim() || p.eta.cols() != m->left_algebra()->dim() ||
      p.eps.rows() != m->right_algebra()->dim() || p.eps.cols() != p.NM->result->dim())
    throw DualityError("make_pair: eta or eps has the wrong shape");
  return p;
}

DualPair right_dual(const BimodulePtr& m) {
  const AlgebraPtr& B = m->right_algebra();
  HomSpace h = hom_right(m, unit_bimodule(B));
  const BimodulePtr& n = h.result;
  const Field& f = m->field();
  const std::size_t dm = m->dim(), dn = n->dim();
  std::vector<Matrix> members;
  for (std::size_t k = 0; k < dn; ++k) members.push_back(h.member(k));

  // eps(f_k (x) m_j) = f_k(m_j)
  Matrix ev(f, B->dim(), dn * dm);
  for (std::size_t k = 0; k < dn; ++k)
    for (std::size_t j = 0; j < dm; ++j)
      for (std::size_t r = 0; r < B->dim(); ++r) ev(r, k * dm + j) = members[k](r, j);
  auto nm = tensor_over(n, m);
  auto mn = tensor_over(m, n);

  // m_i (x) f_k -> m_i f_k(m_j)
  auto eta = coevaluation(*mn, dm, [&](std::size_t j) {
    Matrix T(f, dm, dm * dn);
    for (std::size_t k = 0; k < dn; ++k) {
      Matrix act = m->right_action_of(members[k].col(j));
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t r = 0; r < dm; ++r) T(r, i * dn + k) = act(r, i);
    }
    return T;
  });
  if (!eta) throw DualityError("not right dualizable (not f.g. projective as right module)");
  DualPair p = make_pair(m, n, std::move(*eta), ev * nm->section);
  check_constructed(p);
  return p;
}

DualPair left_dual(const BimodulePtr& m) {
  const AlgebraPtr& B = m->left_algebra();
  HomSpace h = hom_left(m, unit_bimodule(B));
  const BimodulePtr& l = h.result;
  const Field& f = m->field();
  const std::size_t dm = m->dim(), dl = l->dim();
  std::vector<Matrix> members;
  for (std::size_t k = 0; k < dl; ++k) members.push_back(h.member(k));

  // eps(m_j (x) g_k) = g_k(m_j)
  Matrix ev(f, B->dim(), dm * dl);
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t k = 0; k < dl; ++k)
      for (std::size_t r = 0; r < B->dim(); ++r) ev(r, j * dl + k) = members[k](r, j);
  auto ml = tensor_over(m, l);
  auto lm = tensor_over(l, m);

  // g_k (x) m_i -> g_k(m_j) m_i
  auto eta = coevaluation(*lm, dm, [&](std::size_t j) {
    Matrix T(f, dm, dl * dm);
    for (std::size_t k = 0; k < dl; ++k) {
      Matrix act = m->left_action_of(members[k].col(j));
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t r = 0; r < dm; ++r) T(r, k * dm + i) = act(r, i);
    }
    return T;
  });
  if (!eta) throw DualityError("not left dualizable (not f.g. projective as left module)");
  DualPair p = make_pair(l, m, std::move(*eta), ev * ml->section);
  check_constructed(p);
  return p;
}

TriangleReport verify_triangles(const DualPair& p) {
  const BimodulePtr &M = p.M, &N = p.N;
  auto UA = unit_bimodule(M->left_algebra()), UB = unit_bimodule(M->right_algebra());
  const BimodulePtr &MN = p.MN->result, &NM = p.NM->result;
  TriangleReport r;

  Matrix left = right_unitor(M) * tensor_maps(M, NM, M, UB, eye(M), p.eps) * associator(M, N, M) *
                tensor_maps(UA, M, MN, M, p.eta, eye(M)) * left_unitor_inverse(M);
  r.left_witness = first_difference(left, eye(M));
  r.left_ok = !r.left_witness;

  Matrix right = left_unitor(N) * tensor_maps(NM, N, UB, N, p.eps, eye(N)) * associator_inverse(N, M, N) *
                 tensor_maps(N, UA, N, MN, eye(N), p.eta) * right_unitor_inverse(N);
  r.right_witness = first_difference(right, eye(N));
  r.right_ok = !r.right_witness;
  return r;
}

DualPair transport_dual(const DualPair& p, const Matrix& q) {
  auto qi = inverse(q);
  if (!qi) throw DualityError("transport_dual: basis change is singular");
  auto n2 = change_basis(p.N, q);
  Matrix eta = tensor_maps(p.M, p.N, p.M, n2, eye(p.M), *qi) * p.eta;
  Matrix eps = p.eps * tensor_maps(n2, p.M, p.N, p.M, q, eye(p.M));
  return make_pair(p.M, n2, std::move(eta), std::move(eps));
}

Matrix mate(const BimodulePtr& P, const BimodulePtr& Q, const Matrix& phi, const DualPair& pair) {
  const BimodulePtr &M = pair.M, &N = pair.N;
  const BimodulePtr &MN = pair.MN->result, &NM = pair.NM->result;
  auto UA = unit_bimodule(M->left_algebra()), UB = unit_bimodule(M->right_algebra());
  auto NP = t(N, P), PM = t(P, M), MQ = t(M, Q), QN = t(Q, N);
  if (phi.rows() != MQ->dim() || phi.cols() != PM->dim()) throw DualityError("mate: phi has the wrong shape");

  Matrix g = right_unitor_inverse(NP);
  g = tensor_maps(NP, UA, NP, MN, eye(NP), pair.eta) * g;
  g = associator_inverse(NP, M, N) * g;
  g = tensor_maps(t(NP, M), N, t(N, PM), N, associator(N, P, M), eye(N)) * g;
  g = tensor_maps(t(N, PM), N, t(N, MQ), N, tensor_maps(N, PM, N, MQ, eye(N), phi), eye(N)) * g;
  g = tensor_maps(t(N, MQ), N, t(NM, Q), N, associator_inverse(N, M, Q), eye(N)) * g;
  g = associator(NM, Q, N) * g;
  g = tensor_maps(NM, QN, UB, QN, pair.eps, eye(QN)) * g;
  return left_unitor(QN) * g;
}

namespace {

// C and E without the triangle data.
DualizabilityWitness c_and_e(const AlgebraPtr& a) {
  const Field& f = a->field();
  const std::size_t d = a->dim();
  auto k = ground_field(f);
  DualizabilityWitness w;
  w.A = a;
  w.Aop = opposite(a);
  w.Ae = tensor_algebra(a, w.Aop);
  auto opA = tensor_algebra(w.Aop, a);

  // m (a (x) b) = b m a and (b (x) a) m = a m b
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) acts.push_back(a->left_mult(j) * a->right_mult(i));
  w.C = make_bimodule(k, w.Ae, d, {Matrix::identity(f, d)}, acts);
  w.E = make_bimodule(opA, k, d, acts, {Matrix::identity(f, d)});
  return w;
}

}  // namespace

DualizabilityWitness one_dualizability_witness(const AlgebraPtr& a) {
  const Field& f = a->field();
  const std::size_t d = a->dim();
  DualizabilityWitness w = c_and_e(a);
  auto UA = unit_bimodule(a);
  auto UAop = unit_bimodule(w.Aop);

  // (c (x) x) (x) (y (x) e) -> x e c y
  auto s1 = tensor_over(external_tensor(w.C, UA), external_tensor(UA, w.E));
  Matrix free1(f, d, d * d * d * d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y)
        for (std::size_t e = 0; e < d; ++e) {
          Vector v = word(*a, {x, e, c, y});
          for (std::size_t r = 0; r < d; ++r) free1(r, (c * d + x) * d * d + y * d + e) = v[r];
        }
  w.snake_A = s1->result;
  w.triangle_A = free1 * s1->section;

  // (x (x) c) (x) (e (x) y) -> y c e x, products taken in A
  auto s2 = tensor_over(external_tensor(UAop, w.C), external_tensor(w.E, UAop));
  Matrix free2(f, d, d * d * d * d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t e = 0; e < d; ++e)
        for (std::size_t y = 0; y < d; ++y) {
          Vector v = word(*a, {y, c, e, x});
          for (std::size_t r = 0; r < d; ++r) free2(r, (x * d + c) * d * d + e * d + y) = v[r];
        }
  w.snake_Aop = s2->result;
  w.triangle_Aop = free2 * s2->section;
  return w;
}

TwoDualizability is_two_dualizable(const AlgebraPtr& a) {
  TwoDualizability out;
  auto w = c_and_e(a);
  try {
    out.C_right = right_dual(w.C);
  } catch (const DualityError& e) {
    out.reason = std::string("C: ") + e.what();
  }
  try {
    out.E_left = left_dual(w.E);
  } catch (const DualityError& e) {
    if (out.reason.empty()) out.reason = std::string("E: ") + e.what();
  }
  out.C_left = left_dual(w.C);
  out.E_right = right_dual(w.E);
  out.ok = out.C_right && out.E_left;
  return out;
}

void require_two_dualizable(const AlgebraPtr& a) {
  if (!a->separability())
    throw ScopeRefusal(a->name() + " is not separable, so it is not 2-dualizable in the strict setting");
}

}  // namespace morita
