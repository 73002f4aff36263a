#include "morita/twochar.hpp"

#include <stdexcept>

namespace morita {

namespace {

Matrix id(const BimodulePtr& m) { return Matrix::identity(m->field(), m->dim()); }

Matrix invert(const Matrix& m, const char* what) {
  auto inv = inverse(m);
  if (!inv) throw ActionError(std::string(what) + " is not invertible");
  return *inv;
}

BimodulePtr tensor(const BimodulePtr& x, const BimodulePtr& y) { return tensor_over(x, y)->result; }

// A_x (.) A_y -> A_xy = A_zw -> A_z (.) A_w.
Matrix exchange(const GroupAction& act, std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
  if (act.mult(x, y) != act.mult(z, w)) throw ActionError("group elements do not match");
  return invert(act.compose(z, w), "composition") * act.compose(x, y);
}

bool isomorphic(const BimodulePtr& x, const BimodulePtr& y) {
  if (x->dim() != y->dim()) return false;
  auto basis = intertwiner_basis(x, y);
  if (basis.empty()) return false;
  SeededInts rng(17);
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix f(x->field(), y->dim(), x->dim());
    for (const auto& b : basis) f += Scalar(x->field(), attempt == 0 ? 1L : rng.next(-5, 5)) * b;
    if (rank(f) == x->dim()) return true;
  }
  return false;
}

InstanceResult flag(std::string description, std::uint64_t seed, bool ok) {
  InstanceResult r;
  r.description = std::move(description);
  r.seed = seed;
  r.left = ok ? "valid" : "invalid";
  r.right = "valid";
  r.pass = ok;
  return r;
}

}  // namespace

BimodulePtr twisted_bimodule(const AlgebraPtr& a, const Matrix& alpha) {
  std::size_t n = a->dim();
  if (alpha.rows() != n || alpha.cols() != n) throw ActionError("automorphism has the wrong shape");
  if (!is_algebra_homomorphism(*a, *a, alpha)) throw ActionError("not a unital algebra homomorphism");
  if (rank(alpha) != n) throw ActionError("homomorphism is not invertible");
  std::vector<Matrix> left, right;
  for (std::size_t i = 0; i < n; ++i) {
    left.push_back(a->left_mult(i));
    right.push_back(a->right_mult_of(alpha.col(i)));
  }
  return make_bimodule(a, a, n, left, right);
}

GroupAction::GroupAction(GroupTable group, AlgebraPtr a, std::vector<Matrix> alpha, std::string name)
    : group_(std::move(group)), A_(std::move(a)), alpha_(std::move(alpha)), name_(std::move(name)) {
  std::size_t n = group_.size();
  if (n == 0) throw ActionError("empty group");
  if (alpha_.size() != n) throw ActionError("one automorphism per group element is required");
  e_ = group_identity(group_);
  if (!alpha_[e_].is_identity()) throw ActionError("identity does not act trivially");
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (alpha_[g] * alpha_[h] != alpha_[group_[g][h]])
        throw ActionError("alpha_g alpha_h != alpha_gh at (" + std::to_string(g) + ", " + std::to_string(h) + ")");
  for (std::size_t g = 0; g < n; ++g) bimods_.push_back(twisted_bimodule(A_, alpha_[g]));
}

std::size_t GroupAction::inverse(std::size_t g) const { return group_inverse(group_, g); }

Matrix GroupAction::compose(std::size_t g, std::size_t h) const {
  auto t = tensor_over(bimods_[g], bimods_[h]);
  std::size_t n = A_->dim();
  std::vector<Vector> cols;
  cols.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols.push_back(A_->left_mult(i).apply(alpha_[g].col(j)));
  return Matrix::from_columns(A_->field(), n, cols) * t->section;
}

GroupActionPtr permutation_action(const Field& f, const GroupTable& g, const std::vector<std::vector<std::size_t>>& perms,
                                  std::string name) {
  if (perms.size() != g.size()) throw ActionError("one permutation per group element is required");
  std::size_t n = perms.empty() ? 0 : perms[0].size();
  auto a = product_algebra(f, n);
  std::vector<Matrix> alpha;
  for (const auto& p : perms) {
    if (p.size() != n) throw ActionError("permutations of different sizes");
    Matrix m(f, n, n);
    for (std::size_t x = 0; x < n; ++x) m(p[x], x) = Scalar::one(f);
    alpha.push_back(m);
  }
  return std::make_shared<const GroupAction>(g, a, alpha, std::move(name));
}

GroupActionPtr regular_permutation_action(const Field& f, const GroupTable& g, std::string name) {
  return permutation_action(f, g, g, std::move(name));
}

GroupActionPtr trivial_action(const AlgebraPtr& a, const GroupTable& g, std::string name) {
  std::vector<Matrix> alpha(g.size(), Matrix::identity(a->field(), a->dim()));
  return std::make_shared<const GroupAction>(g, a, alpha, std::move(name));
}

SquareCell square_cell(const GroupActionPtr& action, std::size_t g, std::size_t h) {
  if (!action->commute(g, h))
    throw ActionError("elements " + std::to_string(g) + " and " + std::to_string(h) + " do not commute");
  return {action, g, h, action->bimodule(g), action->bimodule(h), exchange(*action, g, h, h, g)};
}

Scalar cell_trace(const SquareCell& cell, TraceOrder order) { return iterated_trace(cell.X, cell.Y, cell.phi, order); }

Scalar two_character(const SquareCell& cell) {
  Scalar a = cell_trace(cell, TraceOrder::M_first);
  Scalar b = cell_trace(cell, TraceOrder::N_first);
  if (a != b) throw std::logic_error("iterated trace orders disagree: " + a.str() + " vs " + b.str());
  return a;
}

SquareCell act_T(const SquareCell& c) {
  auto xy = tensor(c.X, c.Y), yx = tensor(c.Y, c.X);
  Matrix phi = associator(c.Y, c.X, c.Y) * tensor_maps(xy, c.Y, yx, c.Y, c.phi, id(c.Y));
  return {c.action, c.action->mult(c.g, c.h), c.h, xy, c.Y, phi};
}

SquareCell act_S(const SquareCell& c) {
  auto pair = right_dual(c.X);
  const auto& X = c.X;
  const auto& Y = c.Y;
  const auto& Xs = pair.N;
  Matrix eta_inv = invert(pair.eta, "unit");
  Matrix eps_inv = invert(pair.eps, "counit");
  auto U = unit_bimodule(X->left_algebra());
  auto xy = tensor(X, Y), yx = tensor(Y, X), yxs = tensor(Y, Xs), xxs = pair.MN->result, xsx = pair.NM->result;

  // X (.) (Y (.) X*) -> (X (.) Y) (.) X* -> (Y (.) X) (.) X* -> Y (.) (X (.) X*) -> Y (.) U -> Y
  Matrix inner = right_unitor(Y) * tensor_maps(Y, xxs, Y, U, id(Y), eta_inv) * associator(Y, X, Xs) *
                 tensor_maps(xy, Xs, yx, Xs, c.phi, id(Xs)) * associator_inverse(X, Y, Xs);
  // Y (.) X* -> U (.) (Y (.) X*) -> (X* (.) X) (.) (Y (.) X*) -> X* (.) (X (.) (Y (.) X*)) -> X* (.) Y
  Matrix phi = tensor_maps(Xs, tensor(X, yxs), Xs, Y, id(Xs), inner) * associator(Xs, X, yxs) *
               tensor_maps(U, yxs, xsx, yxs, eps_inv, id(yxs)) * left_unitor_inverse(yxs);
  return {c.action, c.h, c.action->inverse(c.g), Y, Xs, phi};
}

bool cell_is_valid(const SquareCell& c) {
  std::size_t n = c.action->algebra()->dim();
  if (c.X->dim() != n || c.Y->dim() != n) return false;
  if (!c.action->commute(c.g, c.h)) return false;
  auto xy = tensor(c.X, c.Y), yx = tensor(c.Y, c.X);
  if (c.phi.rows() != yx->dim() || c.phi.cols() != xy->dim() || rank(c.phi) != xy->dim()) return false;
  if (!is_intertwiner(*xy, *yx, c.phi)) return false;
  return isomorphic(c.X, c.action->bimodule(c.g)) && isomorphic(c.Y, c.action->bimodule(c.h));
}

std::vector<CharacterEntry> character_table(const GroupActionPtr& action) {
  std::vector<CharacterEntry> out;
  for (std::size_t g = 0; g < action->order(); ++g)
    for (std::size_t h = 0; h < action->order(); ++h)
      if (action->commute(g, h)) out.push_back({g, h, two_character(square_cell(action, g, h))});
  return out;
}

TheoremReport check_modular_invariance(const GroupActionPtr& action, std::uint64_t seed, std::size_t words,
                                       std::size_t max_len) {
  TheoremReport report;
  report.theorem = "modular_invariance";
  try {
    require_two_dualizable(action->algebra());
  } catch (const ScopeRefusal& e) {
    report.skip(e.what());
    return report;
  }
  const auto& G = *action;
  for (std::size_t g = 0; g < G.order(); ++g) {
    for (std::size_t h = 0; h < G.order(); ++h) {
      if (!G.commute(g, h)) continue;
      std::string pair = "(" + std::to_string(g) + "," + std::to_string(h) + ")";
      auto cell = square_cell(action, g, h);
      Scalar base = cell_trace(cell, TraceOrder::M_first);
      report.add(compare_scalars("orders " + pair, 0, base, cell_trace(cell, TraceOrder::N_first)));

      auto s = act_S(cell), t = act_T(cell);
      report.add(flag("S preserves cell " + pair, 0, cell_is_valid(s)));
      report.add(flag("T preserves cell " + pair, 0, cell_is_valid(t)));
      Scalar vs = cell_trace(s, TraceOrder::M_first), vt = cell_trace(t, TraceOrder::M_first);
      report.add(compare_scalars("S " + pair, 0, vs, base));
      report.add(compare_scalars("T " + pair, 0, vt, base));
      report.add(compare_scalars("S orders " + pair, 0, vs, cell_trace(s, TraceOrder::N_first)));
      report.add(compare_scalars("T orders " + pair, 0, vt, cell_trace(t, TraceOrder::N_first)));
      // The transformed cells against fresh cells at their group labels.
      report.add(compare_scalars("S matches fresh " + pair, 0, vs,
                                 cell_trace(square_cell(action, s.g, s.h), TraceOrder::M_first)));
      report.add(compare_scalars("T matches fresh " + pair, 0, vt,
                                 cell_trace(square_cell(action, t.g, t.h), TraceOrder::M_first)));

      auto s4 = act_S(act_S(act_S(s)));
      report.add(compare_scalars("S^4 " + pair, 0, cell_trace(s4, TraceOrder::M_first), base));

      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t ws = seed * 1000003 + w;
        SeededInts rng(ws);
        std::size_t len = static_cast<std::size_t>(rng.next(1, static_cast<long>(max_len)));
        std::string word;
        auto c = cell;
        for (std::size_t i = 0; i < len; ++i) {
          bool is_s = rng.next(0, 1) == 0;
          word += is_s ? 'S' : 'T';
          c = is_s ? act_S(c) : act_T(c);
        }
        report.add(compare_scalars("word " + word + " " + pair, ws, cell_trace(c, TraceOrder::M_first), base));
      }
    }
  }
  return report;
}

TheoremReport check_double_shadow(const GroupActionPtr& action) {
  TheoremReport report;
  report.theorem = "double_shadow";
  try {
    require_two_dualizable(action->algebra());
  } catch (const ScopeRefusal& e) {
    report.skip(e.what());
    return report;
  }
  const auto& G = *action;
  auto trace = [](const BimodulePtr& m, const BimodulePtr& n, const Matrix& phi) {
    return iterated_trace(m, n, phi, TraceOrder::M_first);
  };
  for (std::size_t a = 0; a < G.order(); ++a) {
    for (std::size_t c = 0; c < G.order(); ++c) {
      for (std::size_t d = 0; d < G.order(); ++d) {
        std::string tag = "(" + std::to_string(a) + "," + std::to_string(c) + "," + std::to_string(d) + ")";
        const auto& X = G.bimodule(a);
        const auto& C = G.bimodule(c);
        const auto& D = G.bimodule(d);

        // Side by side: alpha: X C -> C B, beta: B D -> D X.
        std::size_t b = G.mult(G.inverse(c), G.mult(a, c));
        if (G.mult(b, d) == G.mult(d, a)) {
          const auto& B = G.bimodule(b);
          Matrix al = exchange(G, a, c, c, b), be = exchange(G, b, d, d, a);
          auto xc = tensor(X, C), cb = tensor(C, B), bd = tensor(B, D), dx = tensor(D, X);
          Matrix h1 = associator_inverse(C, D, X) * tensor_maps(C, bd, C, dx, id(C), be) * associator(C, B, D) *
                      tensor_maps(xc, D, cb, D, al, id(D)) * associator_inverse(X, C, D);
          Matrix h2 = associator_inverse(D, C, B) * tensor_maps(D, xc, D, cb, id(D), al) * associator(D, X, C) *
                      tensor_maps(bd, C, dx, C, be, id(C)) * associator_inverse(B, D, C);
          report.add(compare_scalars("horizontal " + tag, 0, trace(X, tensor(C, D), h1), trace(B, tensor(D, C), h2)));
        }

        // Stacked: alpha: X C -> B X, beta: D B -> C D.
        std::size_t b2 = G.mult(G.mult(a, c), G.inverse(a));
        if (G.mult(d, b2) == G.mult(c, d)) {
          const auto& B = G.bimodule(b2);
          Matrix al = exchange(G, a, c, b2, a), be = exchange(G, d, b2, c, d);
          auto xc = tensor(X, C), bx = tensor(B, X), db = tensor(D, B), cd = tensor(C, D);
          Matrix v1 = associator(C, D, X) * tensor_maps(db, X, cd, X, be, id(X)) * associator_inverse(D, B, X) *
                      tensor_maps(D, xc, D, bx, id(D), al) * associator(D, X, C);
          Matrix v2 = associator(B, X, D) * tensor_maps(xc, D, bx, D, al, id(D)) * associator_inverse(X, C, D) *
                      tensor_maps(X, db, X, cd, id(X), be) * associator(X, D, B);
          report.add(compare_scalars("vertical " + tag, 0, trace(tensor(D, X), C, v1), trace(tensor(X, D), B, v2)));
        }
      }
    }
  }
  return report;
}

}  // namespace morita
