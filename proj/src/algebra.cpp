#include "morita/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace morita {

namespace {

std::string idx(std::size_t i) { return "e" + std::to_string(i); }

// Nonzero structure constants per (i, j).
using Sparse = std::vector<std::vector<std::pair<std::size_t, Scalar>>>;

Sparse sparse_constants(std::size_t n, const std::vector<Scalar>& mult) {
  Sparse s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Scalar& x = mult[(i * n + j) * n + k];
        if (!x.is_zero()) s[i * n + j].emplace_back(k, x);
      }
  return s;
}

// Reduced row echelon basis grown one vector at a time.
class Echelon {
 public:
  explicit Echelon(const Field& f) : f_(f) {}
  std::size_t size() const { return rows_.size(); }

  bool contains(Vector v) const { return !reduce(v); }

  bool insert(Vector v) {
    if (!reduce(v)) return false;
    std::size_t p = 0;
    while (v[p].is_zero()) ++p;
    Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r][p].is_zero()) continue;
      Scalar c = rows_[r][p];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) rows_[r][k] -= c * v[k];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  // Clears v at every pivot; true if something is left.
  bool reduce(Vector& v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (v[pivots_[r]].is_zero()) continue;
      Scalar c = v[pivots_[r]];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!rows_[r][k].is_zero()) v[k] -= c * rows_[r][k];
    }
    return !is_zero(v);
  }

  Field f_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

// Greedy: the smallest basis index outside the subalgebra generated so far.
std::vector<std::size_t> find_generators(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::size_t> gens;
  Echelon span(a.field());
  std::vector<Vector> words{a.unit()};
  std::vector<std::size_t> applied{0};
  span.insert(a.unit());
  while (true) {
    for (std::size_t b = 0; b < words.size(); ++b)
      while (applied[b] < gens.size()) {
        Vector w = a.left_mult(gens[applied[b]++]).apply(words[b]);
        if (span.insert(w)) {
          words.push_back(std::move(w));
          applied.push_back(0);
        }
      }
    if (span.size() == n) break;
    std::size_t i = 0;
    while (span.contains(a.basis(i))) ++i;
    gens.push_back(i);
  }
  return gens;
}

}  // namespace

Algebra::Algebra(const Field& f, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::string name,
                 bool check)
    : f_(f), dim_(dim), mult_(std::move(mult)), unit_(std::move(unit)), name_(std::move(name)) {
  if (dim_ == 0) throw AlgebraError("algebra of dimension 0");
  if (mult_.size() != dim_ * dim_ * dim_) throw AlgebraError("structure constants have wrong length");
  if (unit_.size() != dim_) throw AlgebraError("unit vector has wrong length");
  for (const auto& x : mult_)
    if (x.field() != f_) throw FieldMismatch("structure constant over " + x.field().name());
  for (const auto& x : unit_)
    if (x.field() != f_) throw FieldMismatch("unit coordinate over " + x.field().name());

  const std::size_t n = dim_;
  if (check) {
    Sparse s = sparse_constants(n, mult_);
    // (e_i e_j) e_k == e_i (e_j e_k)
    Vector lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          std::fill(lhs.begin(), lhs.end(), Scalar::zero(f_));
          std::fill(rhs.begin(), rhs.end(), Scalar::zero(f_));
          for (const auto& [l, x] : s[i * n + j])
            for (const auto& [m, y] : s[l * n + k]) lhs[m].add_product(x, y);
          for (const auto& [l, x] : s[j * n + k])
            for (const auto& [m, y] : s[i * n + l]) rhs[m].add_product(x, y);
          if (lhs != rhs)
            throw AlgebraError("not associative on basis triple (" + idx(i) + ", " + idx(j) + ", " + idx(k) + ")");
        }
    for (std::size_t i = 0; i < n; ++i) {
      Vector l = zero_vector(f_, n), r = zero_vector(f_, n);
      for (std::size_t u = 0; u < n; ++u) {
        if (unit_[u].is_zero()) continue;
        for (const auto& [m, y] : s[u * n + i]) l[m].add_product(unit_[u], y);
        for (const auto& [m, y] : s[i * n + u]) r[m].add_product(unit_[u], y);
      }
      Vector e = unit_vector(f_, n, i);
      if (l != e || r != e) throw AlgebraError("unit is not a two-sided identity on basis element " + idx(i));
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    Matrix L(f_, n, n), R(f_, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        L(k, j) = c(i, j, k);
        R(k, j) = c(j, i, k);
      }
    left_.push_back(std::move(L));
    right_.push_back(std::move(R));
  }
  gens_ = find_generators(*this);
}

Matrix Algebra::left_mult_of(const Vector& a) const {
  Matrix m(f_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!a[i].is_zero()) m += a[i] * left_[i];
  return m;
}

Matrix Algebra::right_mult_of(const Vector& a) const {
  Matrix m(f_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (!a[i].is_zero()) m += a[i] * right_[i];
  return m;
}

Vector Algebra::multiply(const Vector& u, const Vector& v) const {
  Vector r = zero_vector(f_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (u[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      Scalar x = u[i] * v[j];
      for (std::size_t k = 0; k < dim_; ++k) r[k].add_product(x, c(i, j, k));
    }
  }
  return r;
}

bool Algebra::same_structure(const Algebra& o) const {
  return f_ == o.f_ && dim_ == o.dim_ && mult_ == o.mult_ && unit_ == o.unit_;
}

const std::optional<Vector>& Algebra::separability() const {
  std::call_once(sep_once_, [this] { sep_ = separability_idempotent(*this); });
  return sep_;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->same_structure(*b));
}

AlgebraPtr new_algebra(const Field& f, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::string name) {
  return std::make_shared<const Algebra>(f, dim, std::move(mult), std::move(unit), std::move(name));
}

AlgebraPtr ground_field(const Field& f) { return new_algebra(f, 1, {Scalar::one(f)}, {Scalar::one(f)}, "k"); }

AlgebraPtr product_algebra(const Field& f, std::size_t n) {
  std::vector<Scalar> m(n * n * n, Scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i) m[(i * n + i) * n + i] = Scalar::one(f);
  return new_algebra(f, n, std::move(m), Vector(n, Scalar::one(f)), "k^" + std::to_string(n));
}

std::size_t group_identity(const std::vector<std::vector<std::size_t>>& t) {
  const std::size_t n = t.size();
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = t[e][g] == g && t[g][e] == g;
    if (ok) return e;
  }
  throw AlgebraError("group table has no identity element");
}

std::size_t group_inverse(const std::vector<std::vector<std::size_t>>& t, std::size_t g) {
  std::size_t e = group_identity(t);
  for (std::size_t h = 0; h < t.size(); ++h)
    if (t[g][h] == e && t[h][g] == e) return h;
  throw AlgebraError("element " + std::to_string(g) + " has no inverse");
}

AlgebraPtr group_algebra(const Field& f, const std::vector<std::vector<std::size_t>>& t, std::string name) {
  const std::size_t n = t.size();
  if (n == 0) throw AlgebraError("empty group table");
  for (const auto& row : t) {
    if (row.size() != n) throw AlgebraError("group table is not square");
    for (auto x : row)
      if (x >= n) throw AlgebraError("group table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw AlgebraError("group table not associative at (" + std::to_string(a) + ", " + std::to_string(b) +
                             ", " + std::to_string(c) + ")");
  std::size_t e = group_identity(t);
  for (std::size_t g = 0; g < n; ++g) group_inverse(t, g);
  std::vector<Scalar> m(n * n * n, Scalar::zero(f));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[(a * n + b) * n + t[a][b]] = Scalar::one(f);
  return new_algebra(f, n, std::move(m), unit_vector(f, n, e), name.empty() ? "k[G]" : name);
}

AlgebraPtr matrix_algebra(const Field& f, std::size_t n) {
  if (n == 0) throw AlgebraError("matrix algebra of size 0");
  const std::size_t d = n * n;
  std::vector<Scalar> m(d * d * d, Scalar::zero(f));
  Vector unit = zero_vector(f, d);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i * n + i] = Scalar::one(f);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) m[((i * n + j) * d + (j * n + l)) * d + (i * n + l)] = Scalar::one(f);
  }
  return new_algebra(f, d, std::move(m), unit, "M_" + std::to_string(n));
}

AlgebraPtr path_algebra(const Field& f, std::size_t vertices,
                        const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  if (vertices == 0) throw AlgebraError("quiver without vertices");
  for (const auto& [s, t] : arrows)
    if (s >= vertices || t >= vertices) throw AlgebraError("arrow endpoint out of range");
  // Kahn's algorithm: a leftover vertex means a directed cycle.
  std::vector<std::size_t> indeg(vertices, 0);
  for (const auto& a : arrows) ++indeg[a.second];
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < vertices; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t seen = 0;
  while (seen < queue.size()) {
    std::size_t v = queue[seen++];
    for (const auto& a : arrows)
      if (a.first == v && --indeg[a.second] == 0) queue.push_back(a.second);
  }
  if (seen < vertices) throw AlgebraError("quiver has a directed cycle; path algebra is infinite-dimensional");

  // A path is its vertex list for length 0, else its arrow list.
  struct Path {
    std::size_t src, dst;
    std::vector<std::size_t> arrows;
  };
  std::vector<Path> paths;
  for (std::size_t v = 0; v < vertices; ++v) paths.push_back({v, v, {}});
  std::vector<Path> layer;
  for (std::size_t a = 0; a < arrows.size(); ++a) layer.push_back({arrows[a].first, arrows[a].second, {a}});
  while (!layer.empty()) {
    std::vector<Path> next;
    for (const auto& p : layer) {
      paths.push_back(p);
      for (std::size_t a = 0; a < arrows.size(); ++a)
        if (arrows[a].first == p.dst) {
          Path q = p;
          q.arrows.push_back(a);
          q.dst = arrows[a].second;
          next.push_back(q);
        }
    }
    layer = std::move(next);
  }
  const std::size_t n = paths.size();
  std::map<std::tuple<std::size_t, std::size_t, std::vector<std::size_t>>, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[{paths[i].src, paths[i].dst, paths[i].arrows}] = i;
  std::vector<Scalar> m(n * n * n, Scalar::zero(f));
  Vector unit = zero_vector(f, n);
  for (std::size_t v = 0; v < vertices; ++v) unit[v] = Scalar::one(f);
  // p * q = "p then q" when p ends where q starts
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (paths[i].dst != paths[j].src) continue;
      std::vector<std::size_t> arr = paths[i].arrows;
      arr.insert(arr.end(), paths[j].arrows.begin(), paths[j].arrows.end());
      m[(i * n + j) * n + index.at({paths[i].src, paths[j].dst, arr})] = Scalar::one(f);
    }
  return new_algebra(f, n, std::move(m), unit, "kQ");
}

AlgebraPtr truncated_polynomial(const Field& f, std::size_t n) {
  if (n == 0) throw AlgebraError("k[x]/x^0 is the zero ring");
  std::vector<Scalar> m(n * n * n, Scalar::zero(f));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) m[(i * n + j) * n + i + j] = Scalar::one(f);
  return new_algebra(f, n, std::move(m), unit_vector(f, n, 0), "k[x]/x^" + std::to_string(n));
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  const std::size_t n = a->dim();
  std::vector<Scalar> m(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m[(i * n + j) * n + k] = a->c(j, i, k);
  return std::make_shared<const Algebra>(a->field(), n, std::move(m), a->unit(), a->name() + "^op", false);
}

AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw FieldMismatch("tensor of algebras over different fields");
  const std::size_t p = a->dim(), q = b->dim(), n = p * q;
  std::vector<Scalar> m(n * n * n, Scalar::zero(a->field()));
  for (std::size_t i1 = 0; i1 < p; ++i1)
    for (std::size_t j1 = 0; j1 < p; ++j1)
      for (std::size_t k1 = 0; k1 < p; ++k1) {
        const Scalar& x = a->c(i1, j1, k1);
        if (x.is_zero()) continue;
        for (std::size_t i2 = 0; i2 < q; ++i2)
          for (std::size_t j2 = 0; j2 < q; ++j2)
            for (std::size_t k2 = 0; k2 < q; ++k2) {
              const Scalar& y = b->c(i2, j2, k2);
              if (!y.is_zero()) m[((i1 * q + i2) * n + (j1 * q + j2)) * n + (k1 * q + k2)] = x * y;
            }
      }
  Vector unit = zero_vector(a->field(), n);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) unit[i * q + j] = a->unit()[i] * b->unit()[j];
  return std::make_shared<const Algebra>(a->field(), n, std::move(m), unit, "(" + a->name() + ")(x)(" + b->name() + ")",
                                         false);
}

AlgebraPtr enveloping(const AlgebraPtr& a) { return tensor_algebra(a, opposite(a)); }

std::optional<Vector> separability_idempotent(const Algebra& a) {
  const Field& f = a.field();
  const std::size_t n = a.dim();
  const Matrix I = Matrix::identity(f, n);
  std::vector<Matrix> blocks;
  for (auto g : a.generators()) blocks.push_back(kron(a.left_mult(g), I) - kron(I, a.right_mult(g)));
  Matrix mu(f, n, n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t k = 0; k < n; ++k) mu(k, p * n + q) = a.c(p, q, k);
  blocks.push_back(mu);
  Vector rhs = zero_vector(f, (blocks.size() - 1) * n * n);
  rhs.insert(rhs.end(), a.unit().begin(), a.unit().end());
  return solve(vstack(blocks), rhs);
}

std::vector<Vector> center(const Algebra& a) {
  std::vector<Matrix> blocks;
  for (auto g : a.generators()) blocks.push_back(a.left_mult(g) - a.right_mult(g));
  if (blocks.empty()) return {a.unit()};
  return kernel_basis(vstack(blocks));
}

bool is_algebra_homomorphism(const Algebra& a, const Algebra& b, const Matrix& h) {
  if (h.rows() != b.dim() || h.cols() != a.dim()) return false;
  if (h.apply(a.unit()) != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (h.apply(a.multiply(a.basis(i), a.basis(j))) != b.multiply(h.col(i), h.col(j))) return false;
  return true;
}

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

std::vector<std::vector<std::size_t>> product_group_table(const std::vector<std::vector<std::size_t>>& g,
                                                          const std::vector<std::vector<std::size_t>>& h) {
  const std::size_t a = g.size(), b = h.size();
  std::vector<std::vector<std::size_t>> t(a * b, std::vector<std::size_t>(a * b));
  for (std::size_t g1 = 0; g1 < a; ++g1)
    for (std::size_t h1 = 0; h1 < b; ++h1)
      for (std::size_t g2 = 0; g2 < a; ++g2)
        for (std::size_t h2 = 0; h2 < b; ++h2) t[g1 * b + h1][g2 * b + h2] = g[g1][g2] * b + h[h1][h2];
  return t;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<std::size_t>> symmetric_group_table(std::size_t n) {
  auto perms = permutations(n);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::vector<std::size_t>> t(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      std::vector<std::size_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];  // (s_i s_j)(x) = s_i(s_j(x))
      t[i][j] = index.at(c);
    }
  return t;
}

}  // namespace morita
