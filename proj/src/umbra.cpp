#include "morita/umbra.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace morita {

namespace {

BimodulePtr t(const BimodulePtr& m, const BimodulePtr& n) { return tensor_over(m, n)->result; }

Matrix id(const BimodulePtr& m) { return Matrix::identity(m->field(), m->dim()); }

Matrix invert(const Matrix& m, const char* what) {
  auto inv = inverse(m);
  if (!inv) throw std::logic_error(std::string("umbra: ") + what + " is not invertible");
  return *inv;
}

// Bracketings of a composite of bimodules.
struct Tree;
using TreeP = std::shared_ptr<const Tree>;
struct Tree {
  BimodulePtr leaf;
  TreeP l, r;
};

TreeP leaf(BimodulePtr m) { return std::make_shared<const Tree>(Tree{std::move(m), nullptr, nullptr}); }
TreeP node(TreeP l, TreeP r) { return std::make_shared<const Tree>(Tree{nullptr, std::move(l), std::move(r)}); }

BimodulePtr product(const TreeP& x) { return x->leaf ? x->leaf : t(product(x->l), product(x->r)); }

// Replaces the subtree at path ('l'/'r' steps) by rep through f: product(sub) -> product(rep).
std::pair<Matrix, TreeP> apply_at(const TreeP& x, const std::string& path, const Matrix& f, const TreeP& rep) {
  if (path.empty()) return {f, rep};
  if (path[0] == 'l') {
    auto [g, nl] = apply_at(x->l, path.substr(1), f, rep);
    auto r = product(x->r);
    return {tensor_maps(product(x->l), r, product(nl), r, g, id(r)), node(nl, x->r)};
  }
  auto [g, nr] = apply_at(x->r, path.substr(1), f, rep);
  auto l = product(x->l);
  return {tensor_maps(l, product(x->r), l, product(nr), id(l), g), node(x->l, nr)};
}

// Runs a sequence of local moves, composing the matrices.
struct Walk {
  TreeP tree;
  Matrix map;

  explicit Walk(TreeP x) : tree(std::move(x)), map(id(product(tree))) {}
  void at(const std::string& path, const Matrix& f, const TreeP& rep) {
    auto [g, nt] = apply_at(tree, path, f, rep);
    map = g * map;
    tree = nt;
  }
};

}  // namespace

struct UmbraData::Cache {
  std::mutex lock;
  std::map<const Bimodule*, std::pair<BimodulePtr, BimodulePtr>> tilde;
};

BimodulePtr UmbraData::tilde(const BimodulePtr& m) const {
  if (m == unit_bimodule(A)) return unit_bimodule(Ae);
  std::lock_guard<std::mutex> g(cache->lock);
  auto it = cache->tilde.find(m.get());
  if (it != cache->tilde.end()) return it->second.second;
  const std::size_t d = A->dim();
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      l.push_back(kron(m->left_action(i), Aop->left_mult(j)));
      r.push_back(kron(m->right_action(i), Aop->right_mult(j)));
    }
  auto mt = make_bimodule(Ae, Ae, m->dim() * d, std::move(l), std::move(r));
  cache->tilde[m.get()] = {m, mt};
  return mt;
}

namespace {

TreeP shape(const BimodulePtr& x, const BimodulePtr& mt, const BimodulePtr& y) {
  return node(node(leaf(x), leaf(mt)), leaf(y));
}

// (X (.) M~) (.) (N~ (.) Y) -> (X (.) (M N)~) (.) Y, sending
// (x (x) (m (x) c)) (x) ((n (x) c') (x) y) to x (x) ((m (x) n) (x) c'c) (x) y.
Matrix merge_middle(const UmbraData& u, const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& m,
                    const BimodulePtr& n) {
  const Field& f = m->field();
  const std::size_t d = u.A->dim(), dx = x->dim(), dy = y->dim(), dm = m->dim(), dn = n->dim();
  auto mn = tensor_over(m, n);
  const std::size_t dw = mn->result->dim();
  auto xm = tensor_over(x, u.tilde(m)), ny = tensor_over(u.tilde(n), y);
  auto xw = tensor_over(x, u.tilde(mn->result));
  auto target = tensor_over(xw->result, y);
  const std::size_t a = xm->result->dim(), b = ny->result->dim();
  const Matrix &sx = xm->section, &sy = ny->section;

  // K[(w, x, i), (n, c)] = sum_m surj[w, (m, n)] sx[(x, m, c), i]
  Matrix K(f, dw * dx * a, dn * d);
  for (std::size_t xi = 0; xi < dx; ++xi)
    for (std::size_t mi = 0; mi < dm; ++mi)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < a; ++i) {
          const Scalar& v = sx((xi * dm + mi) * d + c, i);
          if (v.is_zero()) continue;
          for (std::size_t ni = 0; ni < dn; ++ni)
            for (std::size_t w = 0; w < dw; ++w) {
              const Scalar& s = mn->surjection(w, mi * dn + ni);
              if (!s.is_zero()) K((w * dx + xi) * a + i, ni * d + c).add_product(s, v);
            }
        }
  // H[(n, c), (k, y, j)] = sum_c' sy[(n, c', y), j] [c'c]_k
  Matrix H(f, dn * d, d * dy * b);
  for (std::size_t ni = 0; ni < dn; ++ni)
    for (std::size_t c2 = 0; c2 < d; ++c2)
      for (std::size_t yi = 0; yi < dy; ++yi)
        for (std::size_t j = 0; j < b; ++j) {
          const Scalar& v = sy((ni * d + c2) * dy + yi, j);
          if (v.is_zero()) continue;
          for (std::size_t c = 0; c < d; ++c)
            for (std::size_t k = 0; k < d; ++k) {
              const Scalar& s = u.A->c(c2, c, k);
              if (!s.is_zero()) H(ni * d + c, (k * dy + yi) * b + j).add_product(s, v);
            }
        }
  Matrix R = K * H;
  Matrix P = target->surjection * kron(xw->surjection, Matrix::identity(f, dy));
  Matrix free(f, target->result->dim(), a * b);
  for (std::size_t w = 0; w < dw; ++w)
    for (std::size_t xi = 0; xi < dx; ++xi)
      for (std::size_t i = 0; i < a; ++i)
        for (std::size_t k = 0; k < d; ++k)
          for (std::size_t yi = 0; yi < dy; ++yi)
            for (std::size_t j = 0; j < b; ++j) {
              const Scalar& v = R((w * dx + xi) * a + i, (k * dy + yi) * b + j);
              if (v.is_zero()) continue;
              const std::size_t col = ((xi * dw + w) * d + k) * dy + yi;
              for (std::size_t r = 0; r < free.rows(); ++r)
                if (!P(r, col).is_zero()) free(r, i * b + j).add_product(v, P(r, col));
            }
  return free * tensor_over(xm->result, ny->result)->section;
}

// Inverse of merge_middle: x (x) ((m (x) n) (x) c) (x) y -> (x (x) (m (x) 1)) (x) ((n (x) c) (x) y).
Matrix split_middle(const UmbraData& u, const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& m,
                    const BimodulePtr& n) {
  const Field& f = m->field();
  const std::size_t d = u.A->dim(), dx = x->dim(), dy = y->dim(), dm = m->dim(), dn = n->dim();
  auto mn = tensor_over(m, n);
  const std::size_t dw = mn->result->dim();
  auto xm = tensor_over(x, u.tilde(m)), ny = tensor_over(u.tilde(n), y);
  auto xw = tensor_over(x, u.tilde(mn->result));
  auto source = tensor_over(xw->result, y);
  Matrix S = kron(xw->section, Matrix::identity(f, dy)) * source->section;
  const std::size_t a = xm->result->dim();

  Matrix PX(f, a, dx * dm);
  for (std::size_t xi = 0; xi < dx; ++xi)
    for (std::size_t mi = 0; mi < dm; ++mi)
      for (std::size_t r = 0; r < d; ++r) {
        const Scalar& e = u.A->unit()[r];
        if (e.is_zero()) continue;
        for (std::size_t i = 0; i < a; ++i) PX(i, xi * dm + mi) += e * xm->surjection(i, (xi * dm + mi) * d + r);
      }
  // V[(x, m, n, c, y), j] = sum_w sec[(m, n), w] S[(x, w, c, y), j]
  Matrix V(f, dx * dm * dn * d * dy, S.cols());
  for (std::size_t xi = 0; xi < dx; ++xi)
    for (std::size_t w = 0; w < dw; ++w)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t yi = 0; yi < dy; ++yi)
          for (std::size_t j = 0; j < S.cols(); ++j) {
            const Scalar& v = S(((xi * dw + w) * d + c) * dy + yi, j);
            if (v.is_zero()) continue;
            for (std::size_t mi = 0; mi < dm; ++mi)
              for (std::size_t ni = 0; ni < dn; ++ni) {
                const Scalar& s = mn->section(mi * dn + ni, w);
                if (!s.is_zero())
                  V((((xi * dm + mi) * dn + ni) * d + c) * dy + yi, j).add_product(s, v);
              }
          }
  return tensor_over(xm->result, ny->result)->surjection * kron_apply(PX, ny->surjection, V);
}

// ((X, (M N)~), Y) -> ((X, M~), E) x ((E', N~), Y)
Matrix split(const UmbraData& u, const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& m,
             const BimodulePtr& n) {
  auto mt = u.tilde(m), nt = u.tilde(n);
  const BimodulePtr& ed = u.E_pair.N;
  auto xm = node(leaf(x), leaf(mt)), ny = node(leaf(nt), leaf(y));
  Walk w(node(xm, ny));
  w.map = split_middle(u, x, y, m, n);
  auto pxm = product(xm), ee = t(u.E, ed);
  Matrix insert = tensor_maps(pxm, unit_bimodule(u.Ae), pxm, ee, id(pxm), u.E_pair.eta) * right_unitor_inverse(pxm);
  w.at("l", insert, node(xm, node(leaf(u.E), leaf(ed))));
  auto left = node(xm, leaf(u.E));
  w.at("l", associator_inverse(pxm, u.E, ed), node(left, leaf(ed)));
  auto pl = product(left);
  w.at("", associator(pl, ed, product(ny)), node(left, node(leaf(ed), ny)));
  auto right = shape(ed, nt, y);
  w.at("r", associator_inverse(ed, nt, y), right);
  return tensor_over(pl, product(right))->section * w.map;
}

// ((X, M~), C') x ((C, N~), Y) -> ((X, (M N)~), Y)
Matrix join(const UmbraData& u, const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& m,
            const BimodulePtr& n) {
  auto mt = u.tilde(m), nt = u.tilde(n);
  const BimodulePtr& cd = u.C_pair.N;
  auto xm = node(leaf(x), leaf(mt)), ny = node(leaf(nt), leaf(y));
  auto left = node(xm, leaf(cd)), right = node(node(leaf(u.C), leaf(nt)), leaf(y));
  auto pl = product(left), pxm = product(xm), pny = product(ny);
  Walk w(node(left, right));
  w.at("r", associator(u.C, nt, y), node(leaf(u.C), ny));
  w.at("", associator_inverse(pl, u.C, pny), node(node(left, leaf(u.C)), ny));
  w.at("l", associator(pxm, cd, u.C), node(xm, node(leaf(cd), leaf(u.C))));
  auto ua = unit_bimodule(u.Ae);
  w.at("lr", u.C_pair.eps, leaf(ua));
  w.at("l", right_unitor(pxm), xm);
  return merge_middle(u, x, y, m, n) * w.map * tensor_over(pl, product(right))->surjection;
}

Matrix functor_map(const UmbraData& u, const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& m,
                   const BimodulePtr& m2, const Matrix& f) {
  auto mt = u.tilde(m), mt2 = u.tilde(m2);
  Matrix ft = kron(f, Matrix::identity(f.field(), u.A->dim()));
  Matrix inner = tensor_maps(x, mt, x, mt2, id(x), ft);
  return tensor_maps(t(x, mt), y, t(x, mt2), y, inner, id(y));
}

}  // namespace

BimodulePtr UmbraData::sh(const BimodulePtr& m) const { return t(t(C, tilde(m)), E); }
BimodulePtr UmbraData::csh(const BimodulePtr& m) const { return t(t(C, tilde(m)), C_pair.N); }
BimodulePtr UmbraData::esh(const BimodulePtr& m) const { return t(t(E_pair.N, tilde(m)), E); }
BimodulePtr UmbraData::dsh(const BimodulePtr& m) const { return t(t(E_pair.N, tilde(m)), C_pair.N); }

Matrix UmbraData::sh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const {
  return functor_map(*this, C, E, m, m2, f);
}
Matrix UmbraData::csh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const {
  return functor_map(*this, C, C_pair.N, m, m2, f);
}
Matrix UmbraData::esh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const {
  return functor_map(*this, E_pair.N, E, m, m2, f);
}
Matrix UmbraData::dsh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const {
  return functor_map(*this, E_pair.N, C_pair.N, m, m2, f);
}

Matrix UmbraData::spl(const BimodulePtr& m, const BimodulePtr& n) const {
  Matrix s = split(*this, C, C_pair.N, m, n);
  if (corruption == UmbraCorruption::splitting) return Scalar(A->field(), 2L) * s;
  return s;
}
Matrix UmbraData::ruspl(const BimodulePtr& m, const BimodulePtr& n) const { return split(*this, C, E, m, n); }
Matrix UmbraData::luspl(const BimodulePtr& m, const BimodulePtr& n) const {
  return split(*this, E_pair.N, C_pair.N, m, n);
}
Matrix UmbraData::rspl(const BimodulePtr& m, const BimodulePtr& n) const {
  return join(*this, E_pair.N, C_pair.N, m, n);
}
Matrix UmbraData::uspl(const BimodulePtr& m, const BimodulePtr& n) const { return join(*this, E_pair.N, E, m, n); }
Matrix UmbraData::lspl(const BimodulePtr& m, const BimodulePtr& n) const { return join(*this, C, E, m, n); }

// c0 (x) (m (x) c) (x) e -> [c c0 m e]
Matrix UmbraData::sh_to_hh0(const BimodulePtr& m) const {
  const Field& f = A->field();
  const std::size_t d = A->dim(), dm = m->dim();
  auto mt = tilde(m);
  auto inner = tensor_over(C, mt);
  auto outer = tensor_over(inner->result, E);
  Matrix sec = kron(inner->section, Matrix::identity(f, d)) * outer->section;
  Matrix free(f, dm, d * dm * d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t s = 0; s < d; ++s) {
      Matrix left = m->left_action_of(A->multiply(A->basis(s), A->basis(i)));
      for (std::size_t e = 0; e < d; ++e) {
        Matrix act = left * m->right_action(e);
        for (std::size_t j = 0; j < dm; ++j) {
          const std::size_t col = (i * dm * d + j * d + s) * d + e;
          for (std::size_t r = 0; r < dm; ++r) free(r, col) = act(r, j);
        }
      }
    }
  return hh0(m)->projection * free * sec;
}

// f (x) (m (x) c) (x) phi -> sum w_pq f(x_q c) [m x_p], where phi(1) = w = sum w_pq x_p (x) x_q
Matrix UmbraData::dsh_to_hh0(const BimodulePtr& m) const {
  const Field& f = A->field();
  const std::size_t d = A->dim(), dm = m->dim();
  const BimodulePtr &ed = E_pair.N, &cd = C_pair.N;
  const std::size_t de = ed->dim(), dc = cd->dim();
  Matrix fvals = E_pair.eps * E_pair.NM->surjection;  // 1 x (de * d)
  Matrix phis = C_pair.eps * C_pair.NM->surjection;   // d^2 x (dc * d)
  std::vector<Vector> w(dc, zero_vector(f, d * d));
  for (std::size_t l = 0; l < dc; ++l)
    for (std::size_t x = 0; x < d; ++x) {
      if (A->unit()[x].is_zero()) continue;
      for (std::size_t r = 0; r < d * d; ++r) w[l][r] += A->unit()[x] * phis(r, l * d + x);
    }
  auto mt = tilde(m);
  auto inner = tensor_over(ed, mt);
  auto outer = tensor_over(inner->result, cd);
  Matrix sec = kron(inner->section, Matrix::identity(f, dc)) * outer->section;
  Matrix free(f, dm, de * dm * d * dc);
  for (std::size_t k = 0; k < de; ++k)
    for (std::size_t s = 0; s < d; ++s) {
      // F(q) = f_k(x_q x_s)
      std::vector<Scalar> F(d, Scalar::zero(f));
      for (std::size_t q = 0; q < d; ++q) {
        Vector prod = A->multiply(A->basis(q), A->basis(s));
        for (std::size_t r = 0; r < d; ++r)
          if (!prod[r].is_zero()) F[q] += prod[r] * fvals(0, k * d + r);
      }
      for (std::size_t l = 0; l < dc; ++l) {
        Vector a = zero_vector(f, d);
        for (std::size_t p = 0; p < d; ++p)
          for (std::size_t q = 0; q < d; ++q)
            if (!w[l][p * d + q].is_zero()) a[p] += w[l][p * d + q] * F[q];
        Matrix act = m->right_action_of(a);
        for (std::size_t j = 0; j < dm; ++j) {
          const std::size_t col = (k * dm * d + j * d + s) * dc + l;
          for (std::size_t r = 0; r < dm; ++r) free(r, col) = act(r, j);
        }
      }
    }
  return hh0(m)->projection * free * sec;
}

Matrix UmbraData::theta_sh(const BimodulePtr& m, const BimodulePtr& n) const {
  Matrix th = invert(sh_to_hh0(t(n, m)), "sh comparison") * shadow_theta(m, n) * sh_to_hh0(t(m, n));
  if (corruption == UmbraCorruption::theta) return Scalar(A->field(), 2L) * th;
  return th;
}

Matrix UmbraData::theta_dsh(const BimodulePtr& m, const BimodulePtr& n) const {
  return invert(dsh_to_hh0(t(n, m)), "dsh comparison") * shadow_theta(m, n) * dsh_to_hh0(t(m, n));
}

UmbraData build_umbra(const AlgebraPtr& a) {
  require_two_dualizable(a);
  const Field& f = a->field();
  const std::size_t d = a->dim();
  UmbraData u;
  u.cache = std::make_shared<UmbraData::Cache>();
  u.witness = one_dualizability_witness(a);
  u.A = a;
  u.Aop = u.witness.Aop;
  u.Ae = u.witness.Ae;
  u.C = u.witness.C;
  // (a (x) b) x = a x b
  std::vector<Matrix> acts;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) acts.push_back(a->left_mult(i) * a->right_mult(j));
  u.E = make_bimodule(u.Ae, ground_field(f), d, acts, {Matrix::identity(f, d)});
  u.C_pair = right_dual(u.C);
  u.E_pair = right_dual(u.E);

  const BimodulePtr &cd = u.C_pair.N, &ed = u.E_pair.N;
  auto ua = unit_bimodule(u.Ae);
  Walk in(node(leaf(u.C), leaf(cd)));
  in.at("l", right_unitor_inverse(u.C), node(leaf(u.C), leaf(ua)));
  u.iunit = in.map * u.C_pair.eta;

  Walk out(shape(ed, ua, u.E));
  out.at("l", right_unitor(ed), leaf(ed));
  u.ounit = u.E_pair.eps * out.map;
  return u;
}

Matrix swap_factors(const Field& f, std::size_t dx, std::size_t dy) {
  Matrix s(f, dx * dy, dx * dy);
  for (std::size_t i = 0; i < dx; ++i)
    for (std::size_t j = 0; j < dy; ++j) s(j * dx + i, i * dy + j) = Scalar::one(f);
  return s;
}

TheoremReport check_penumbra_axioms(const UmbraData& u, const BimodulePtr& M, const BimodulePtr& N,
                                    const BimodulePtr& P, std::uint64_t seed) {
  TheoremReport rep;
  rep.theorem = "penumbra";
  auto U = unit_bimodule(u.A);
  auto MN = t(M, N), NP = t(N, P), NM = t(N, M);
  auto MN_P = t(MN, P), M_NP = t(M, NP), P_NM = t(P, NM), PN_M = t(t(P, N), M);
  Matrix a = associator(M, N, P), ainv = associator_inverse(M, N, P);

  rep.add(compare_matrices("csh(MN) x sh(P) -> sh(M) x esh(NP)", seed,
                           kron(id(u.sh(M)), u.uspl(N, P)) * kron(u.spl(M, N), id(u.sh(P))),
                           u.ruspl(M, NP) * u.sh_map(MN_P, M_NP, a) * u.lspl(MN, P)));
  rep.add(compare_matrices("dsh(M) x csh(NP) -> esh(MN) x dsh(P)", seed,
                           kron(u.uspl(M, N), id(u.dsh(P))) * kron(id(u.dsh(M)), u.spl(N, P)),
                           u.luspl(MN, P) * u.dsh_map(M_NP, MN_P, ainv) * u.rspl(M, NP)));
  rep.add(compare_matrices("csh(MNP) -> sh(M) x esh(N) x dsh(P)", seed,
                           kron(id(u.sh(M)), u.luspl(N, P)) * u.spl(M, NP) * u.csh_map(MN_P, M_NP, a),
                           kron(u.ruspl(M, N), id(u.dsh(P))) * u.spl(MN, P)));
  rep.add(compare_matrices("dsh(P) x csh(N) x sh(M) -> esh(PNM)", seed,
                           u.uspl(t(P, N), M) * kron(u.rspl(P, N), id(u.sh(M))),
                           u.esh_map(P_NM, PN_M, associator_inverse(P, N, M)) * u.uspl(P, NM) *
                               kron(id(u.dsh(P)), u.lspl(N, M))));
  rep.add(compare_matrices("left unit for sh", seed,
                           u.sh_map(t(U, M), M, left_unitor(M)) * u.lspl(U, M) * kron(u.iunit, id(u.sh(M))),
                           id(u.sh(M))));
  rep.add(compare_matrices("right unit for dsh", seed,
                           u.dsh_map(t(M, U), M, right_unitor(M)) * u.rspl(M, U) * kron(id(u.dsh(M)), u.iunit),
                           id(u.dsh(M))));
  rep.add(compare_matrices("right counit for sh", seed, kron(id(u.sh(M)), u.ounit) * u.ruspl(M, U),
                           u.sh_map(t(M, U), M, right_unitor(M))));
  rep.add(compare_matrices("left counit for dsh", seed, kron(u.ounit, id(u.dsh(M))) * u.luspl(U, M),
                           u.dsh_map(t(U, M), M, left_unitor(M))));

  // naturality along f: M -> P, g: N -> M
  Matrix fm = random_bimodule_map(M, P, seed * 2 + 1).matrix, gm = random_bimodule_map(N, M, seed * 2 + 2).matrix;
  auto PM = t(P, M);
  Matrix fg = tensor_maps(M, N, P, M, fm, gm);
  rep.add(compare_matrices("spl is natural", seed, kron(u.sh_map(M, P, fm), u.dsh_map(N, M, gm)) * u.spl(M, N),
                           u.spl(P, M) * u.csh_map(MN, PM, fg)));
  rep.add(compare_matrices("uspl is natural", seed, u.esh_map(MN, PM, fg) * u.uspl(M, N),
                           u.uspl(P, M) * kron(u.dsh_map(M, P, fm), u.sh_map(N, M, gm))));
  return rep;
}

TheoremReport check_umbra_square(const UmbraData& u, const BimodulePtr& M, const BimodulePtr& N,
                                 const BimodulePtr& P, std::uint64_t seed) {
  TheoremReport rep;
  rep.theorem = "umbra_square";
  const Field& f = u.A->field();
  auto MN = t(M, N), NM = t(N, M), NP = t(N, P), PN = t(P, N);
  auto P_NM = t(P, NM), PN_M = t(PN, M), MN_P = t(MN, P), M_NP = t(M, NP);
  Matrix left = u.esh_map(P_NM, PN_M, associator_inverse(P, N, M)) * u.uspl(P, NM) *
                swap_factors(f, u.sh(NM)->dim(), u.dsh(P)->dim()) * kron(u.theta_sh(M, N), id(u.dsh(P))) *
                u.spl(MN, P);
  Matrix right = u.uspl(PN, M) * swap_factors(f, u.sh(M)->dim(), u.dsh(PN)->dim()) *
                 kron(id(u.sh(M)), u.theta_dsh(N, P)) * u.spl(M, NP) * u.csh_map(MN_P, M_NP, associator(M, N, P));
  rep.add(compare_matrices("csh((MN)P) -> esh((PN)M)", seed, left, right));
  return rep;
}

TheoremReport check_penumbra_dual(const UmbraData& u, const DualPair& pair, std::uint64_t seed) {
  TheoremReport rep;
  rep.theorem = "penumbra_dual";
  auto U = unit_bimodule(u.A);
  const BimodulePtr &n = pair.M, &m = pair.N;
  Matrix coev = u.spl(n, m) * u.csh_map(U, pair.MN->result, pair.eta) * u.iunit;
  Matrix ev = u.ounit * u.esh_map(pair.NM->result, U, pair.eps) * u.uspl(m, n);
  Matrix ix = id(u.sh(n)), iy = id(u.dsh(m));
  rep.add(compare_matrices("sh(N) triangle", seed, kron(ix, ev) * kron(coev, ix), ix));
  rep.add(compare_matrices("dsh(M) triangle", seed, kron(ev, iy) * kron(iy, coev), iy));
  return rep;
}

TheoremReport check_umbra_seeded(const UmbraData& u, std::uint64_t first_seed, std::size_t seeds,
                                 std::size_t max_dim) {
  TheoremReport rep;
  rep.theorem = "umbra";
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    auto M = random_bimodule(u.A, u.A, 3 * s + 1, max_dim), N = random_bimodule(u.A, u.A, 3 * s + 2, max_dim);
    auto P = random_bimodule(u.A, u.A, 3 * s + 3, max_dim);
    for (auto& x : check_penumbra_axioms(u, M, N, P, s).instances) rep.add(x);
    for (auto& x : check_umbra_square(u, M, N, P, s).instances) rep.add(x);
    for (auto& x : check_penumbra_dual(u, right_dual(M), s).instances) rep.add(x);
  }
  return rep;
}

}  // namespace morita
