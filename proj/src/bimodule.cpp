#include "morita/bimodule.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

namespace morita {

namespace {

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

Matrix sum_of(const std::vector<Matrix>& ms, const Vector& coeffs, std::size_t dim, const Field& f) {
  Matrix out(f, dim, dim);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero()) out += coeffs[i] * ms[i];
  return out;
}

// Space of r x c matrices X with X S_t = T_t X for every constraint, as a reduced row basis.
HomSpace solve_linear_maps(std::size_t r, std::size_t c, const Field& f,
                           const std::vector<std::pair<Matrix, Matrix>>& constraints) {
  const std::size_t n = r * c;
  Matrix K = Matrix::identity(f, n);  // columns span the current solution space (row-major vec)
  const Matrix Ir = Matrix::identity(f, r), Ic = Matrix::identity(f, c);
  for (const auto& [S, T] : constraints) {
    if (K.cols() == 0) break;
    Matrix D = kron_apply(Ir, S.transpose(), K) - kron_apply(T, Ic, K);
    auto ker = kernel_basis(D);
    if (ker.size() == K.cols()) continue;
    K = ker.empty() ? Matrix(f, n, 0) : K * Matrix::from_columns(f, K.cols(), ker);
  }
  HomSpace h;
  h.rows = r;
  h.cols = c;
  if (K.cols() == 0) {
    h.basis = Matrix(f, 0, n);
    return h;
  }
  Rref rr = rref(K.transpose());
  h.basis = rr.reduced.block(0, 0, rr.rank, n);
  h.pivots = rr.pivots;
  return h;
}

BimodulePtr unit_cached(const AlgebraPtr& a) {
  static std::mutex mu;
  static std::map<const Algebra*, std::pair<AlgebraPtr, BimodulePtr>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(a.get());
  if (it != cache.end()) return it->second.second;
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    l.push_back(a->left_mult(i));
    r.push_back(a->right_mult(i));
  }
  auto u = std::make_shared<const Bimodule>(a, a, a->dim(), std::move(l), std::move(r), false);
  cache[a.get()] = {a, u};
  return u;
}

// Rows of the rref of the smallest sub-bimodule containing the given vectors.
// Vectors are reduced one at a time against an echelon basis; only new ones are acted on.
// Gives up with an empty result once the span exceeds cap.
Rref closure(const Bimodule& m, const std::vector<Vector>& gens, std::size_t cap = SIZE_MAX) {
  const Field& f = m.field();
  std::vector<Vector> basis;
  std::vector<std::size_t> piv;
  std::vector<Vector> queue = gens;
  while (!queue.empty()) {
    Vector v = std::move(queue.back());
    queue.pop_back();
    for (std::size_t t = 0; t < basis.size(); ++t) {
      if (v[piv[t]].is_zero()) continue;
      Scalar c = v[piv[t]];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!basis[t][k].is_zero()) v[k] -= c * basis[t][k];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) continue;
    Scalar inv = v[p].inverse();
    for (auto& x : v) x = x * inv;
    for (auto g : m.left_algebra()->generators()) queue.push_back(m.left_action(g).apply(v));
    for (auto g : m.right_algebra()->generators()) queue.push_back(m.right_action(g).apply(v));
    basis.push_back(std::move(v));
    piv.push_back(p);
    if (basis.size() > cap) return rref(Matrix(f, 0, m.dim()));
  }
  return rref(Matrix::from_columns(f, m.dim(), basis).transpose());
}

BimodulePtr restrict_to(const BimodulePtr& m, const Rref& sub) {
  const Field& f = m->field();
  const std::size_t d = sub.rank;
  auto restrict_one = [&](const Matrix& act) {
    Matrix out(f, d, d);
    for (std::size_t t = 0; t < d; ++t) {
      Vector w = act.apply(sub.reduced.row(t));
      for (std::size_t s = 0; s < d; ++s) out(s, t) = w[sub.pivots[s]];
    }
    return out;
  };
  std::vector<Matrix> l, r;
  for (const auto& a : m->left_actions()) l.push_back(restrict_one(a));
  for (const auto& b : m->right_actions()) r.push_back(restrict_one(b));
  return std::make_shared<const Bimodule>(m->left_algebra(), m->right_algebra(), d, std::move(l), std::move(r), false);
}

// Random element of a small one-sided ideal: kernels of x -> x a (left ideals) or x -> a x (right ideals).
Vector small_ideal_element(const Algebra& alg, bool left, SeededInts& rng) {
  const Field& f = alg.field();
  const std::size_t n = alg.dim();
  Matrix K = Matrix::identity(f, n);
  long steps = rng.next(0, 6);
  for (long t = 0; t < steps && n > 1; ++t) {
    Vector a = zero_vector(f, n);
    long kind = rng.next(0, 2);
    std::size_t i = rng.raw() % n, j = rng.raw() % n;
    long c = rng.next(-3, 3);
    if (kind == 0) {
      a[i] += Scalar::one(f);
      a[j] -= Scalar(f, c);
    } else if (kind == 1) {
      a[i] = Scalar::one(f);
    } else {
      for (auto& x : a) x = Scalar::one(f);
      a[i] -= Scalar(f, c);
    }
    Matrix op = left ? alg.right_mult_of(a) : alg.left_mult_of(a);
    auto ker = kernel_basis(op * K);
    if (!ker.empty() && ker.size() < K.cols()) K = K * Matrix::from_columns(f, K.cols(), ker);
  }
  while (true) {
    Vector coords = random_matrix(f, K.cols(), 1, rng).col(0);
    Vector x = K.apply(coords);
    if (!is_zero(x)) return x;
  }
}

BimodulePtr free_bimodule(const AlgebraPtr& a, const AlgebraPtr& b) {
  const Field& f = a->field();
  std::vector<Matrix> l, r;
  const Matrix Ia = Matrix::identity(f, a->dim()), Ib = Matrix::identity(f, b->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) l.push_back(kron(a->left_mult(i), Ib));
  for (std::size_t j = 0; j < b->dim(); ++j) r.push_back(kron(Ia, b->right_mult(j)));
  return std::make_shared<const Bimodule>(a, b, a->dim() * b->dim(), std::move(l), std::move(r), false);
}

}  // namespace

Bimodule::Bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                   std::vector<Matrix> right_action, bool check)
    : A_(std::move(left)), B_(std::move(right)), dim_(dim), left_(std::move(left_action)), right_(std::move(right_action)) {
  if (!A_ || !B_) throw BimoduleError("bimodule without algebras");
  if (A_->field() != B_->field()) throw FieldMismatch("bimodule over algebras with different fields");
  if (check) validate();
}

Matrix Bimodule::left_action_of(const Vector& a) const { return sum_of(left_, a, dim_, field()); }
Matrix Bimodule::right_action_of(const Vector& b) const { return sum_of(right_, b, dim_, field()); }

void Bimodule::validate() const {
  const Algebra& A = *A_;
  const Algebra& B = *B_;
  if (left_.size() != A.dim()) throw BimoduleError("expected " + std::to_string(A.dim()) + " left action matrices");
  if (right_.size() != B.dim()) throw BimoduleError("expected " + std::to_string(B.dim()) + " right action matrices");
  for (const auto* acts : {&left_, &right_})
    for (const auto& m : *acts) {
      if (m.rows() != dim_ || m.cols() != dim_) throw BimoduleError("action matrix has shape " + shape(m));
      if (m.field() != field()) throw FieldMismatch("action matrix over " + m.field().name());
    }
  if (!left_action_of(A.unit()).is_identity()) throw BimoduleError("unit of the left algebra does not act as identity");
  if (!right_action_of(B.unit()).is_identity()) throw BimoduleError("unit of the right algebra does not act as identity");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      if (left_[i] * left_[j] != left_action_of(A.multiply(A.basis(i), A.basis(j))))
        throw BimoduleError("left action not multiplicative on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      if (right_[j] * right_[i] != right_action_of(B.multiply(B.basis(i), B.basis(j))))
        throw BimoduleError("right action not multiplicative on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j)
      if (left_[i] * right_[j] != right_[j] * left_[i])
        throw BimoduleError("left action of " + std::to_string(i) + " and right action of " + std::to_string(j) +
                            " do not commute");
}

BimodulePtr make_bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                          std::vector<Matrix> right_action) {
  return std::make_shared<const Bimodule>(std::move(left), std::move(right), dim, std::move(left_action),
                                          std::move(right_action), true);
}

BimodulePtr unit_bimodule(const AlgebraPtr& a) { return unit_cached(a); }

bool is_intertwiner(const Bimodule& src, const Bimodule& dst, const Matrix& f) {
  if (!same_algebra(src.left_algebra(), dst.left_algebra()) || !same_algebra(src.right_algebra(), dst.right_algebra()))
    return false;
  if (f.rows() != dst.dim() || f.cols() != src.dim()) return false;
  for (auto g : src.left_algebra()->generators())
    if (f * src.left_action(g) != dst.left_action(g) * f) return false;
  for (auto g : src.right_algebra()->generators())
    if (f * src.right_action(g) != dst.right_action(g) * f) return false;
  return true;
}

BimoduleMap make_map(const BimodulePtr& src, const BimodulePtr& dst, Matrix f) {
  if (!is_intertwiner(*src, *dst, f)) throw BimoduleError("matrix of shape " + shape(f) + " is not a bimodule map");
  return {src, dst, std::move(f)};
}

Vector TensorWitness::pure_tensor(const Vector& m, const Vector& n) const {
  const Field& f = result->field();
  return (surjection * kron(Matrix::column(m, f), Matrix::column(n, f))).col(0);
}

static TensorPtr compute_tensor(const BimodulePtr& M, const BimodulePtr& N) {
  if (!same_algebra(M->right_algebra(), N->left_algebra()))
    throw BimoduleError("tensor_over: middle algebras differ (" + M->right_algebra()->name() + " vs " +
                        N->left_algebra()->name() + ")");
  const Field& f = M->field();
  const std::size_t dm = M->dim(), dn = N->dim();
  const Matrix Im = Matrix::identity(f, dm), In = Matrix::identity(f, dn);
  std::vector<Matrix> rel;
  for (auto b : M->right_algebra()->generators())
    rel.push_back(kron(M->right_action(b), In) - kron(Im, N->left_action(b)));
  QuotientSpace q = rel.empty() ? quotient(f, dm * dn, {}) : quotient_by_columns(hstack(rel));
  auto w = std::make_shared<TensorWitness>();
  w->left = M;
  w->right = N;
  w->surjection = q.projection;
  w->section = q.section;
  std::vector<Matrix> l, r;
  for (const auto& a : M->left_actions()) l.push_back(q.projection * kron_apply(a, In, q.section));
  for (const auto& c : N->right_actions()) r.push_back(q.projection * kron_apply(Im, c, q.section));
  w->result = std::make_shared<const Bimodule>(M->left_algebra(), N->right_algebra(), q.dim, std::move(l), std::move(r),
                                               false);
  return w;
}

namespace {
std::mutex tensor_mu;
std::map<std::pair<const Bimodule*, const Bimodule*>, std::tuple<BimodulePtr, BimodulePtr, TensorPtr>> tensor_cache;
}  // namespace

TensorPtr tensor_over(const BimodulePtr& m, const BimodulePtr& n) {
  {
    std::lock_guard<std::mutex> lock(tensor_mu);
    auto it = tensor_cache.find({m.get(), n.get()});
    if (it != tensor_cache.end()) return std::get<2>(it->second);
  }
  TensorPtr w = compute_tensor(m, n);
  std::lock_guard<std::mutex> lock(tensor_mu);
  if (tensor_cache.size() > 20000) tensor_cache.clear();
  tensor_cache[{m.get(), n.get()}] = {m, n, w};
  return w;
}

void clear_tensor_cache() {
  std::lock_guard<std::mutex> lock(tensor_mu);
  tensor_cache.clear();
}

Matrix tensor_maps(const TensorWitness& src, const TensorWitness& dst, const Matrix& f, const Matrix& g) {
  return dst.surjection * kron_apply(f, g, src.section);
}

Matrix tensor_maps(const BimodulePtr& m, const BimodulePtr& n, const BimodulePtr& m2, const BimodulePtr& n2,
                   const Matrix& f, const Matrix& g) {
  return tensor_maps(*tensor_over(m, n), *tensor_over(m2, n2), f, g);
}

Matrix associator(const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& z) {
  const Field& f = x->field();
  auto xy = tensor_over(x, y);
  auto xy_z = tensor_over(xy->result, z);
  auto yz = tensor_over(y, z);
  auto x_yz = tensor_over(x, yz->result);
  Matrix pure = kron_apply(xy->section, Matrix::identity(f, z->dim()), xy_z->section);
  return x_yz->surjection * kron_apply(Matrix::identity(f, x->dim()), yz->surjection, pure);
}

Matrix associator_inverse(const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& z) {
  const Field& f = x->field();
  auto xy = tensor_over(x, y);
  auto xy_z = tensor_over(xy->result, z);
  auto yz = tensor_over(y, z);
  auto x_yz = tensor_over(x, yz->result);
  Matrix pure = kron_apply(Matrix::identity(f, x->dim()), yz->section, x_yz->section);
  return xy_z->surjection * kron_apply(xy->surjection, Matrix::identity(f, z->dim()), pure);
}

Matrix left_unitor(const BimodulePtr& m) {
  const AlgebraPtr& a = m->left_algebra();
  auto w = tensor_over(unit_bimodule(a), m);
  const std::size_t da = a->dim(), dm = m->dim();
  Matrix act(m->field(), dm, da * dm);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < dm; ++j)
      for (std::size_t r = 0; r < dm; ++r) act(r, i * dm + j) = m->left_action(i)(r, j);
  return act * w->section;
}

Matrix left_unitor_inverse(const BimodulePtr& m) {
  const AlgebraPtr& a = m->left_algebra();
  auto w = tensor_over(unit_bimodule(a), m);
  const Field& f = m->field();
  return w->surjection * kron(Matrix::column(a->unit(), f), Matrix::identity(f, m->dim()));
}

Matrix right_unitor(const BimodulePtr& m) {
  const AlgebraPtr& b = m->right_algebra();
  auto w = tensor_over(m, unit_bimodule(b));
  const std::size_t db = b->dim(), dm = m->dim();
  Matrix act(m->field(), dm, dm * db);
  for (std::size_t j = 0; j < dm; ++j)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t r = 0; r < dm; ++r) act(r, j * db + i) = m->right_action(i)(r, j);
  return act * w->section;
}

Matrix right_unitor_inverse(const BimodulePtr& m) {
  const AlgebraPtr& b = m->right_algebra();
  auto w = tensor_over(m, unit_bimodule(b));
  const Field& f = m->field();
  return w->surjection * kron(Matrix::identity(f, m->dim()), Matrix::column(b->unit(), f));
}

Matrix HomSpace::member(std::size_t i) const {
  Matrix m(basis.field(), rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) m.entries()[k] = basis(i, k);
  return m;
}

Matrix HomSpace::member_of(const Vector& coords) const {
  Matrix m(basis.field(), rows, cols);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero())
      for (std::size_t k = 0; k < rows * cols; ++k) m.entries()[k].add_product(coords[i], basis(i, k));
  return m;
}

Vector HomSpace::coordinates(const Matrix& f) const {
  Vector v;
  for (auto p : pivots) v.push_back(f.entries()[p]);
  return v;
}

namespace {

// Action matrices on a hom space from maps f -> op(f).
template <class Op>
std::vector<Matrix> induced_actions(const HomSpace& h, std::size_t count, Op op) {
  std::vector<Matrix> out;
  const std::size_t d = h.pivots.size();
  for (std::size_t a = 0; a < count; ++a) {
    Matrix m(h.basis.field(), d, d);
    for (std::size_t t = 0; t < d; ++t) {
      Vector c = h.coordinates(op(a, h.member(t)));
      for (std::size_t s = 0; s < d; ++s) m(s, t) = c[s];
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

HomSpace hom_right(const BimodulePtr& m, const BimodulePtr& n) {
  if (!same_algebra(m->right_algebra(), n->right_algebra())) throw BimoduleError("hom_right: right algebras differ");
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (auto b : m->right_algebra()->generators()) cons.emplace_back(m->right_action(b), n->right_action(b));
  HomSpace h = solve_linear_maps(n->dim(), m->dim(), m->field(), cons);
  auto l = induced_actions(h, n->left_algebra()->dim(), [&](std::size_t a, const Matrix& f) { return n->left_action(a) * f; });
  auto r = induced_actions(h, m->left_algebra()->dim(), [&](std::size_t a, const Matrix& f) { return f * m->left_action(a); });
  h.result = std::make_shared<const Bimodule>(n->left_algebra(), m->left_algebra(), h.pivots.size(), std::move(l),
                                              std::move(r), false);
  return h;
}

HomSpace hom_left(const BimodulePtr& m, const BimodulePtr& n) {
  if (!same_algebra(m->left_algebra(), n->left_algebra())) throw BimoduleError("hom_left: left algebras differ");
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (auto b : m->left_algebra()->generators()) cons.emplace_back(m->left_action(b), n->left_action(b));
  HomSpace h = solve_linear_maps(n->dim(), m->dim(), m->field(), cons);
  auto l = induced_actions(h, m->right_algebra()->dim(), [&](std::size_t a, const Matrix& f) { return f * m->right_action(a); });
  auto r = induced_actions(h, n->right_algebra()->dim(), [&](std::size_t a, const Matrix& f) { return n->right_action(a) * f; });
  h.result = std::make_shared<const Bimodule>(m->right_algebra(), n->right_algebra(), h.pivots.size(), std::move(l),
                                              std::move(r), false);
  return h;
}

BimodulePtr external_tensor(const BimodulePtr& m, const BimodulePtr& n) {
  if (m->field() != n->field()) throw FieldMismatch("external tensor over different fields");
  auto A = tensor_algebra(m->left_algebra(), n->left_algebra());
  auto B = tensor_algebra(m->right_algebra(), n->right_algebra());
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < m->left_algebra()->dim(); ++i)
    for (std::size_t j = 0; j < n->left_algebra()->dim(); ++j) l.push_back(kron(m->left_action(i), n->left_action(j)));
  for (std::size_t i = 0; i < m->right_algebra()->dim(); ++i)
    for (std::size_t j = 0; j < n->right_algebra()->dim(); ++j)
      r.push_back(kron(m->right_action(i), n->right_action(j)));
  return std::make_shared<const Bimodule>(A, B, m->dim() * n->dim(), std::move(l), std::move(r), false);
}

BimodulePtr base_change(const AlgebraPtr& a, const AlgebraPtr& b, const Matrix& h) {
  if (!is_algebra_homomorphism(*a, *b, h)) throw BimoduleError("base_change: not a unital algebra homomorphism");
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < b->dim(); ++i) l.push_back(b->left_mult(i));
  for (std::size_t j = 0; j < a->dim(); ++j) r.push_back(b->right_mult_of(h.col(j)));
  return std::make_shared<const Bimodule>(b, a, b->dim(), std::move(l), std::move(r), false);
}

BimodulePtr direct_sum(const std::vector<BimodulePtr>& ms) {
  if (ms.empty()) throw BimoduleError("direct sum of nothing");
  const Field& f = ms[0]->field();
  std::size_t d = 0;
  for (const auto& m : ms) {
    if (!same_algebra(m->left_algebra(), ms[0]->left_algebra()) ||
        !same_algebra(m->right_algebra(), ms[0]->right_algebra()))
      throw BimoduleError("direct sum of bimodules over different algebras");
    d += m->dim();
  }
  auto block_diag = [&](auto get) {
    Matrix out(f, d, d);
    std::size_t off = 0;
    for (const auto& m : ms) {
      const Matrix& x = get(*m);
      for (std::size_t i = 0; i < m->dim(); ++i)
        for (std::size_t j = 0; j < m->dim(); ++j) out(off + i, off + j) = x(i, j);
      off += m->dim();
    }
    return out;
  };
  std::vector<Matrix> l, r;
  for (std::size_t a = 0; a < ms[0]->left_algebra()->dim(); ++a)
    l.push_back(block_diag([a](const Bimodule& m) -> const Matrix& { return m.left_action(a); }));
  for (std::size_t b = 0; b < ms[0]->right_algebra()->dim(); ++b)
    r.push_back(block_diag([b](const Bimodule& m) -> const Matrix& { return m.right_action(b); }));
  return std::make_shared<const Bimodule>(ms[0]->left_algebra(), ms[0]->right_algebra(), d, std::move(l), std::move(r),
                                          false);
}

BimodulePtr change_basis(const BimodulePtr& m, const Matrix& p) {
  auto inv = inverse(p);
  if (!inv || p.rows() != m->dim()) throw BimoduleError("change_basis: matrix is not an invertible " + shape(p));
  std::vector<Matrix> l, r;
  for (const auto& a : m->left_actions()) l.push_back(*inv * a * p);
  for (const auto& b : m->right_actions()) r.push_back(*inv * b * p);
  return std::make_shared<const Bimodule>(m->left_algebra(), m->right_algebra(), m->dim(), std::move(l), std::move(r),
                                          false);
}

std::vector<Matrix> intertwiner_basis(const BimodulePtr& m, const BimodulePtr& n) {
  if (!same_algebra(m->left_algebra(), n->left_algebra()) || !same_algebra(m->right_algebra(), n->right_algebra()))
    throw BimoduleError("intertwiners between bimodules over different algebras");
  std::vector<std::pair<Matrix, Matrix>> cons;
  for (auto a : m->left_algebra()->generators()) cons.emplace_back(m->left_action(a), n->left_action(a));
  for (auto b : m->right_algebra()->generators()) cons.emplace_back(m->right_action(b), n->right_action(b));
  HomSpace h = solve_linear_maps(n->dim(), m->dim(), m->field(), cons);
  std::vector<Matrix> out;
  for (std::size_t i = 0; i < h.pivots.size(); ++i) out.push_back(h.member(i));
  return out;
}

BimoduleMap random_bimodule_map(const BimodulePtr& m, const BimodulePtr& n, std::uint64_t seed) {
  if (!same_algebra(m->left_algebra(), n->left_algebra()) || !same_algebra(m->right_algebra(), n->right_algebra()))
    throw BimoduleError("random map between bimodules over different algebras");
  const Field& f = m->field();
  SeededInts rng(seed);
  const auto& ea = m->left_algebra()->separability();
  const auto& eb = m->right_algebra()->separability();
  if (ea && eb) {
    // Average a random linear map with the separability idempotents.
    Matrix x = random_matrix(f, n->dim(), m->dim(), rng);
    const std::size_t da = m->left_algebra()->dim(), db = m->right_algebra()->dim();
    Matrix y(f, n->dim(), m->dim());
    for (std::size_t p = 0; p < db; ++p)
      for (std::size_t q = 0; q < db; ++q) {
        const Scalar& c = (*eb)[p * db + q];
        if (!c.is_zero()) y += c * (n->right_action(q) * x * m->right_action(p));
      }
    Matrix z(f, n->dim(), m->dim());
    for (std::size_t p = 0; p < da; ++p)
      for (std::size_t q = 0; q < da; ++q) {
        const Scalar& c = (*ea)[p * da + q];
        if (!c.is_zero()) z += c * (n->left_action(p) * y * m->left_action(q));
      }
    return {m, n, z};
  }
  auto basis = intertwiner_basis(m, n);
  Matrix z(f, n->dim(), m->dim());
  for (const auto& b : basis) z += Scalar(f, rng.next(-3, 3)) * b;
  return {m, n, z};
}

BimodulePtr random_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, std::uint64_t seed, std::size_t max_dim) {
  SeededInts rng(seed);
  auto F = free_bimodule(a, b);
  const long summands = rng.next(1, 3);
  std::vector<BimodulePtr> pieces;
  BimodulePtr smallest;
  std::size_t total = 0;
  for (int attempt = 0; attempt < 24 && static_cast<long>(pieces.size()) < summands; ++attempt) {
    Vector x = small_ideal_element(*a, true, rng);
    Vector y = small_ideal_element(*b, false, rng);
    Vector v;
    for (const auto& s : x)
      for (const auto& t : y) v.push_back(s * t);
    const std::size_t cap = smallest ? std::max(max_dim - total, smallest->dim()) : SIZE_MAX;
    Rref sub = closure(*F, {v}, cap);
    if (sub.rank == 0) continue;
    auto piece = restrict_to(F, sub);
    if (!smallest || piece->dim() < smallest->dim()) smallest = piece;
    if (total + piece->dim() > max_dim) continue;
    pieces.push_back(piece);
    total += piece->dim();
  }
  if (pieces.empty()) pieces.push_back(smallest);
  auto sum = direct_sum(pieces);
  return change_basis(sum, random_invertible(a->field(), sum->dim(), rng));
}

SeededInts::SeededInts(std::uint64_t seed) : state_(seed) {}

std::uint64_t SeededInts::raw() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long SeededInts::next(long lo, long hi) {
  return lo + static_cast<long>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
}

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, SeededInts& rng, long lo, long hi) {
  Matrix m(f, rows, cols);
  for (auto& x : m.entries()) x = Scalar(f, rng.next(lo, hi));
  return m;
}

Matrix random_invertible(const Field& f, std::size_t n, SeededInts& rng) {
  Matrix l = Matrix::identity(f, n), u = Matrix::identity(f, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = Scalar(f, rng.next(-1, 1));
      u(j, i) = Scalar(f, rng.next(-1, 1));
    }
  return l * u;
}

}  // namespace morita
