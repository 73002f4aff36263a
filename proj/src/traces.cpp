#include "morita/traces.hpp"

#include <mutex>

namespace morita {

namespace {

BimodulePtr t(const BimodulePtr& x, const BimodulePtr& y) { return tensor_over(x, y)->result; }

Matrix eye(const BimodulePtr& m) { return Matrix::identity(m->field(), m->dim()); }

// <X> -> <Y> for f: X -> Y, composed with theta and g afterwards.
TraceMap assemble(const BimodulePtr& src, const Matrix& before, const BimodulePtr& x1, const BimodulePtr& th_left,
                  const BimodulePtr& th_right, const BimodulePtr& x2, const Matrix& after, const BimodulePtr& dst) {
  auto s_src = hh0(src), s_x1 = hh0(x1), s_x2 = hh0(x2), s_dst = hh0(dst);
  Matrix m = s_dst->projection * after * s_x2->section * shadow_theta(th_left, th_right) * s_x1->projection * before *
             s_src->section;
  return {s_src, s_dst, std::move(m)};
}

void require_shape(const Matrix& phi, const BimodulePtr& dst, const BimodulePtr& src, const char* what) {
  if (phi.rows() != dst->dim() || phi.cols() != src->dim())
    throw DualityError(std::string(what) + ": twist has shape " + std::to_string(phi.rows()) + "x" +
                       std::to_string(phi.cols()) + ", expected " + std::to_string(dst->dim()) + "x" +
                       std::to_string(src->dim()));
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::skipped:
      return "skipped";
  }
  return "";
}

void TheoremReport::add(InstanceResult r) {
  if (!r.pass && verdict == Verdict::pass) verdict = Verdict::fail;
  instances.push_back(std::move(r));
}

void TheoremReport::skip(std::string why) {
  verdict = Verdict::skipped;
  reason = std::move(why);
}

InstanceResult compare_matrices(std::string description, std::uint64_t seed, const Matrix& left, const Matrix& right) {
  InstanceResult r;
  r.description = std::move(description);
  r.seed = seed;
  r.left = left.str();
  r.right = right.str();
  r.witness = first_difference(left, right);
  r.pass = !r.witness;
  return r;
}

InstanceResult compare_scalars(std::string description, std::uint64_t seed, const Scalar& left, const Scalar& right) {
  InstanceResult r;
  r.description = std::move(description);
  r.seed = seed;
  r.left = left.str();
  r.right = right.str();
  r.pass = left == right;
  if (!r.pass) r.witness = EntryDiff{0, 0, r.left, r.right};
  return r;
}

TraceMap euler_char(const DualPair& pair) {
  auto UA = unit_bimodule(pair.M->left_algebra()), UB = unit_bimodule(pair.M->right_algebra());
  return assemble(UA, pair.eta, pair.MN->result, pair.M, pair.N, pair.NM->result, pair.eps, UB);
}

TraceMap twisted_trace(const BimodulePtr& P, const BimodulePtr& Q, const Matrix& phi, const DualPair& pair) {
  const BimodulePtr &M = pair.M, &N = pair.N, &MN = pair.MN->result, &NM = pair.NM->result;
  auto UA = unit_bimodule(M->left_algebra());
  auto PM = t(P, M), MQ = t(M, Q), QN = t(Q, N);
  require_shape(phi, MQ, PM, "twisted_trace");

  Matrix g = right_unitor_inverse(P);
  g = tensor_maps(P, UA, P, MN, eye(P), pair.eta) * g;
  g = associator_inverse(P, M, N) * g;
  g = tensor_maps(PM, N, MQ, N, phi, eye(N)) * g;
  g = associator(M, Q, N) * g;

  auto UB = unit_bimodule(M->right_algebra());
  Matrix h = associator(Q, N, M);
  h = tensor_maps(Q, NM, Q, UB, eye(Q), pair.eps) * h;
  h = right_unitor(Q) * h;
  return assemble(P, g, t(M, QN), M, QN, t(QN, M), h, Q);
}

TraceMap left_twisted_trace(const BimodulePtr& P, const BimodulePtr& Q, const Matrix& psi, const DualPair& pair) {
  const BimodulePtr &L = pair.M, &X = pair.N, &LX = pair.MN->result, &XL = pair.NM->result;
  auto UA = unit_bimodule(L->left_algebra()), UB = unit_bimodule(L->right_algebra());
  auto XP = t(X, P), QX = t(Q, X);
  require_shape(psi, QX, XP, "left_twisted_trace");

  Matrix g = left_unitor_inverse(P);
  g = tensor_maps(UA, P, LX, P, pair.eta, eye(P)) * g;
  g = associator(L, X, P) * g;
  g = tensor_maps(L, XP, L, QX, eye(L), psi) * g;

  Matrix h = associator(Q, X, L);
  h = tensor_maps(Q, XL, Q, UB, eye(Q), pair.eps) * h;
  h = right_unitor(Q) * h;
  return assemble(P, g, t(L, QX), L, QX, t(QX, L), h, Q);
}

Scalar scalar_trace(const Matrix& f) {
  if (f.rows() != f.cols()) throw std::invalid_argument("scalar_trace: not square");
  Scalar s = Scalar::zero(f.field());
  for (std::size_t i = 0; i < f.rows(); ++i) s += f(i, i);
  return s;
}

Scalar scalar_trace(const TraceMap& f) {
  if (f.source->source != f.target->source)
    throw std::invalid_argument("scalar_trace: source and target differ");
  return scalar_trace(f.matrix);
}

Scalar iterated_trace(const Matrix& phi, const DualPair& left_pair, const DualPair& right_pair, TraceOrder order) {
  const BimodulePtr &M = left_pair.N, &N = right_pair.M;
  if (order == TraceOrder::N_first) return scalar_trace(twisted_trace(M, M, phi, right_pair));
  return scalar_trace(left_twisted_trace(N, N, phi, left_pair));
}

Scalar iterated_trace(const BimodulePtr& m, const BimodulePtr& n, const Matrix& phi, TraceOrder order) {
  require_two_dualizable(m->left_algebra());
  if (order == TraceOrder::N_first) return scalar_trace(twisted_trace(m, m, phi, right_dual(n)));
  return scalar_trace(left_twisted_trace(n, n, phi, left_dual(m)));
}

TwistInstance random_twist(const AlgebraPtr& a, std::uint64_t seed, std::size_t max_dim) {
  TwistInstance x;
  x.M = random_bimodule(a, a, 2 * seed + 1, max_dim);
  x.N = random_bimodule(a, a, 2 * seed + 2, max_dim);
  x.phi = random_bimodule_map(t(x.M, x.N), t(x.N, x.M), seed).matrix;
  return x;
}

TheoremReport check_main_theorem(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                 std::size_t max_dim) {
  TheoremReport rep;
  rep.theorem = "main_theorem";
  try {
    require_two_dualizable(a);
  } catch (const ScopeRefusal& e) {
    rep.skip(e.what());
    return rep;
  }
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    auto x = random_twist(a, s, max_dim);
    auto lp = left_dual(x.M);
    auto rp = right_dual(x.N);
    Scalar mf = iterated_trace(x.phi, lp, rp, TraceOrder::M_first);
    Scalar nf = iterated_trace(x.phi, lp, rp, TraceOrder::N_first);
    rep.add(compare_scalars(a->name() + " dim M=" + std::to_string(x.M->dim()) + " dim N=" +
                                std::to_string(x.N->dim()),
                            s, mf, nf));
  }
  return rep;
}

InstanceResult check_composite(const BimodulePtr& Q1, const BimodulePtr& Q2, const BimodulePtr& Q3, const Matrix& f1,
                               const Matrix& f2, const DualPair& pair1, const DualPair& pair2, std::uint64_t seed) {
  const BimodulePtr &M1 = pair1.M, &M2 = pair2.M;
  auto M12 = t(M1, M2);
  auto Q2M2 = t(Q2, M2), M2Q3 = t(M2, Q3), Q1M1 = t(Q1, M1), M1Q2 = t(M1, Q2);
  require_shape(f1, M1Q2, Q1M1, "check_composite");
  require_shape(f2, M2Q3, Q2M2, "check_composite");

  // Q1 (M1 M2) -> (Q1 M1) M2 -> (M1 Q2) M2 -> M1 (Q2 M2) -> M1 (M2 Q3) -> (M1 M2) Q3
  Matrix g = associator_inverse(Q1, M1, M2);
  g = tensor_maps(Q1M1, M2, M1Q2, M2, f1, eye(M2)) * g;
  g = associator(M1, Q2, M2) * g;
  g = tensor_maps(M1, Q2M2, M1, M2Q3, eye(M1), f2) * g;
  g = associator_inverse(M1, M2, Q3) * g;

  TraceMap pasted = twisted_trace(Q1, Q3, g, right_dual(M12));
  Matrix composite = twisted_trace(Q2, Q3, f2, pair2).matrix * twisted_trace(Q1, Q2, f1, pair1).matrix;
  return compare_matrices("dim M1=" + std::to_string(M1->dim()) + " dim M2=" + std::to_string(M2->dim()), seed,
                          pasted.matrix, composite);
}

InstanceResult check_composite_euler(const BimodulePtr& m1, const BimodulePtr& m2, std::uint64_t seed) {
  Matrix whole = euler_char(right_dual(t(m1, m2))).matrix;
  Matrix parts = euler_char(right_dual(m2)).matrix * euler_char(right_dual(m1)).matrix;
  return compare_matrices("euler dim M1=" + std::to_string(m1->dim()) + " dim M2=" + std::to_string(m2->dim()), seed,
                          whole, parts);
}

TheoremReport check_composite_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                     std::size_t max_dim) {
  TheoremReport rep;
  rep.theorem = "composite";
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    auto Q1 = random_bimodule(a, a, 5 * s + 1, max_dim), Q2 = random_bimodule(a, a, 5 * s + 2, max_dim),
         Q3 = random_bimodule(a, a, 5 * s + 3, max_dim);
    auto M1 = random_bimodule(a, a, 5 * s + 4, max_dim), M2 = random_bimodule(a, a, 5 * s + 5, max_dim);
    Matrix f1 = random_bimodule_map(t(Q1, M1), t(M1, Q2), s).matrix;
    Matrix f2 = random_bimodule_map(t(Q2, M2), t(M2, Q3), s + 1000).matrix;
    rep.add(check_composite(Q1, Q2, Q3, f1, f2, right_dual(M1), right_dual(M2), s));
    rep.add(check_composite_euler(M1, M2, s));
  }
  return rep;
}

InstanceResult check_mate(const BimodulePtr& p, const BimodulePtr& q, const Matrix& phi, const DualPair& pair,
                          std::uint64_t seed) {
  Matrix right = twisted_trace(p, q, phi, pair).matrix;
  Matrix left = left_twisted_trace(p, q, mate(p, q, phi, pair), pair).matrix;
  return compare_matrices("dim M=" + std::to_string(pair.M->dim()) + " dim P=" + std::to_string(p->dim()), seed, right,
                          left);
}

TheoremReport check_mate_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                std::size_t max_dim) {
  TheoremReport rep;
  rep.theorem = "mate";
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s) {
    auto P = random_bimodule(a, a, 3 * s + 1, max_dim), Q = random_bimodule(a, a, 3 * s + 2, max_dim);
    auto M = random_bimodule(a, a, 3 * s + 3, max_dim);
    Matrix phi = random_bimodule_map(t(P, M), t(M, Q), s).matrix;
    rep.add(check_mate(P, Q, phi, right_dual(M), s));
  }
  return rep;
}

BimodulePtr representation_bimodule(const AlgebraPtr& kg, const std::vector<Matrix>& rho) {
  if (rho.size() != kg->dim()) throw BimoduleError("representation: one matrix per group element expected");
  const std::size_t d = rho.at(0).rows();
  return make_bimodule(kg, ground_field(kg->field()), d, rho, {Matrix::identity(kg->field(), d)});
}

std::vector<Scalar> character_of(const BimodulePtr& v) {
  const AlgebraPtr& kg = v->left_algebra();
  TraceMap chi = euler_char(right_dual(v));
  Matrix values = chi.target->section * chi.matrix * chi.source->projection;  // 1 x |G|
  std::vector<Scalar> out;
  for (std::size_t g = 0; g < kg->dim(); ++g) out.push_back(values(0, g));
  return out;
}

std::string convention_name(CharacterConvention c) { return c == CharacterConvention::g ? "g" : "g^-1"; }

CharacterConvention character_convention() {
  static std::once_flag once;
  static CharacterConvention conv;
  std::call_once(once, [] {
    const Field f = Field::prime(7);
    auto kg = group_algebra(f, cyclic_group_table(3));
    std::vector<Matrix> rho;
    Scalar x = Scalar::one(f);
    for (std::size_t i = 0; i < 3; ++i) {
      Matrix m(f, 1, 1);
      m(0, 0) = x;
      rho.push_back(m);
      x *= Scalar(f, 2);
    }
    auto chi = character_of(representation_bimodule(kg, rho));
    if (chi[1] == Scalar(f, 2))
      conv = CharacterConvention::g;
    else if (chi[1] == Scalar(f, 4))
      conv = CharacterConvention::g_inverse;
    else
      throw std::logic_error("character_convention: chi(g) is neither 2 nor 4 but " + chi[1].str());
  });
  return conv;
}

std::vector<Scalar> induced_character(const Field& f, const GroupTable& g, const std::vector<std::size_t>& h,
                                      const std::vector<Scalar>& chi_h) {
  std::vector<long> pos(g.size(), -1);
  for (std::size_t i = 0; i < h.size(); ++i) pos[h[i]] = static_cast<long>(i);
  const Scalar inv_h = Scalar::one(f) / Scalar(f, static_cast<long>(h.size()));
  std::vector<Scalar> out;
  for (std::size_t x = 0; x < g.size(); ++x) {
    Scalar s = Scalar::zero(f);
    for (std::size_t y = 0; y < g.size(); ++y) {
      std::size_t c = g[g[y][x]][group_inverse(g, y)];  // y x y^-1
      if (pos[c] >= 0) s += chi_h[pos[c]];
    }
    out.push_back(s * inv_h);
  }
  return out;
}

TheoremReport check_induction(const Field& f, const GroupTable& g, const std::vector<std::size_t>& h,
                              const std::vector<Matrix>& rho) {
  TheoremReport rep;
  rep.theorem = "induction";
  if (!f.is_rational() && g.size() % f.characteristic() == 0) {
    rep.skip("characteristic " + std::to_string(f.characteristic()) + " divides |G| = " + std::to_string(g.size()));
    return rep;
  }
  GroupTable ht(h.size(), std::vector<std::size_t>(h.size()));
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = 0; j < h.size(); ++j) {
      std::size_t c = g[h[i]][h[j]];
      std::size_t k = 0;
      while (k < h.size() && h[k] != c) ++k;
      if (k == h.size()) throw std::invalid_argument("check_induction: H is not closed under multiplication");
      ht[i][j] = k;
    }
  auto kG = group_algebra(f, g), kH = group_algebra(f, ht);
  Matrix incl(f, g.size(), h.size());
  for (std::size_t i = 0; i < h.size(); ++i) incl(h[i], i) = Scalar::one(f);
  auto M = base_change(kH, kG, incl);
  auto V = representation_bimodule(kH, rho);
  auto MV = t(M, V);

  Matrix whole = euler_char(right_dual(MV)).matrix;
  Matrix parts = euler_char(right_dual(V)).matrix * euler_char(right_dual(M)).matrix;
  rep.add(compare_matrices("chi(Ind V) against chi(V) chi(k[G])", 0, whole, parts));

  std::vector<Scalar> chi_h;
  for (const auto& r : rho) chi_h.push_back(scalar_trace(r));
  auto expected = induced_character(f, g, h, chi_h);
  auto got = character_of(MV);
  const bool inverse = character_convention() == CharacterConvention::g_inverse;
  Matrix l(f, 1, g.size()), r(f, 1, g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    l(0, x) = got[x];
    r(0, x) = expected[inverse ? group_inverse(g, x) : x];
  }
  rep.add(compare_matrices("induced character against the Frobenius formula", 0, l, r));
  return rep;
}

InstanceResult check_lunts(const BimodulePtr& m, std::size_t n_max, std::uint64_t seed) {
  const AlgebraPtr& a = m->left_algebra();
  require_two_dualizable(a);
  const Field& f = a->field();
  GradedEuler ge = graded_euler(m, n_max);
  Scalar tr = scalar_trace(euler_char(right_dual(m)));
  auto r = compare_scalars(a->name() + " dim M=" + std::to_string(m->dim()), seed, Scalar(f, ge.value), tr);
  if (!ge.stabilized) {
    r.pass = false;
    r.description += " (graded euler did not stabilize)";
  }
  return r;
}

TheoremReport check_lunts_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds, std::size_t n_max,
                                 std::size_t max_dim) {
  TheoremReport rep;
  rep.theorem = "lunts";
  try {
    require_two_dualizable(a);
  } catch (const ScopeRefusal& e) {
    rep.skip(std::string(e.what()) + "; the identity is only checked for separable algebras");
    return rep;
  }
  rep.add(check_lunts(unit_bimodule(a), n_max, 0));
  for (std::uint64_t s = first_seed; s < first_seed + seeds; ++s)
    rep.add(check_lunts(random_bimodule(a, a, s, max_dim), n_max, s));
  return rep;
}

}  // namespace morita
