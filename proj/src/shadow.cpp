#include "morita/shadow.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <tuple>

namespace morita {

namespace {

std::mutex shadow_mu;
std::map<const Bimodule*, std::pair<BimodulePtr, ShadowPtr>> shadow_cache;

ShadowPtr compute_hh0(const BimodulePtr& m) {
  if (!same_algebra(m->left_algebra(), m->right_algebra()))
    throw BimoduleError("hh0: left and right algebras differ (" + m->left_algebra()->name() + " vs " +
                        m->right_algebra()->name() + ")");
  std::vector<Matrix> rel;
  for (auto g : m->left_algebra()->generators()) rel.push_back(m->left_action(g) - m->right_action(g));
  QuotientSpace q = rel.empty() ? quotient(m->field(), m->dim(), {}) : quotient_by_columns(hstack(rel));
  auto s = std::make_shared<ShadowSpace>();
  s->source = m;
  s->dim = q.dim;
  s->projection = std::move(q.projection);
  s->section = std::move(q.section);
  return s;
}

// nm.surjection composed with the swap M (x) N -> N (x) M.
Matrix swapped_surjection(const TensorWitness& nm, std::size_t dm, std::size_t dn) {
  Matrix z(nm.surjection.field(), nm.surjection.rows(), dm * dn);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t k = 0; k < dn; ++k)
      for (std::size_t r = 0; r < z.rows(); ++r) z(r, i * dn + k) = nm.surjection(r, k * dm + i);
  return z;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  unsigned __int128 r = 1, b = a;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> to_mod(const Scalar& s, std::uint64_t p) {
  if (!s.field().is_rational()) return s.residue() % p;
  mpq_class q = s.rational();
  std::uint64_t den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return std::nullopt;
  std::uint64_t num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(num) * inv_mod(den, p) % p);
}

// Rank mod p of a dense row-major matrix, destroying it.
std::size_t dense_rank_mod(std::vector<std::uint32_t>& b, std::size_t rows, std::size_t cols, std::uint64_t p) {
  const bool mersenne = p == 2147483647ULL;
  auto reduce = [&](std::uint64_t x) -> std::uint32_t {
    if (!mersenne) return static_cast<std::uint32_t>(x % p);
    x = (x & p) + (x >> 31);
    x = (x & p) + (x >> 31);
    return static_cast<std::uint32_t>(x >= p ? x - p : x);
  };
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t piv = rk;
    while (piv < rows && b[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rk)
      for (std::size_t j = c; j < cols; ++j) std::swap(b[piv * cols + j], b[rk * cols + j]);
    const std::uint32_t* top = &b[rk * cols];
    const std::uint64_t inv = inv_mod(top[c], p);
    for (std::size_t i = rk + 1; i < rows; ++i) {
      std::uint32_t* row = &b[i * cols];
      if (row[c] == 0) continue;
      const std::uint64_t fac = p - reduce(row[c] * inv);
      for (std::size_t j = c; j < cols; ++j)
        if (top[j]) row[j] = reduce(row[j] + fac * top[j]);
    }
    ++rk;
  }
  return rk;
}

// Lower bound for the rank of a sparse matrix over Q: rank mod p of d R for a seeded random
// R with k columns.
std::size_t compressed_rank_mod(const std::vector<SparseColumn>& cols, std::size_t rows, std::size_t k,
                                std::uint64_t p, std::uint64_t seed) {
  std::vector<std::uint32_t> b(rows * k, 0);
  std::vector<std::uint64_t> rrow(k);
  std::mt19937_64 gen(seed);
  for (const auto& c : cols) {
    for (auto& x : rrow) x = gen() % p;
    for (const auto& [i, s] : c.entries) {
      auto v = to_mod(s, p);
      if (!v) throw std::domain_error("compressed_rank_mod: denominator divisible by the prime");
      std::uint32_t* row = &b[i * k];
      for (std::size_t j = 0; j < k; ++j)
        row[j] = static_cast<std::uint32_t>((row[j] + static_cast<unsigned __int128>(*v) * rrow[j]) % p);
    }
  }
  return dense_rank_mod(b, rows, k, p);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

ShadowPtr hh0(const BimodulePtr& m) {
  {
    std::lock_guard<std::mutex> lock(shadow_mu);
    auto it = shadow_cache.find(m.get());
    if (it != shadow_cache.end()) return it->second.second;
  }
  ShadowPtr s = compute_hh0(m);
  std::lock_guard<std::mutex> lock(shadow_mu);
  if (shadow_cache.size() > 20000) shadow_cache.clear();
  shadow_cache[m.get()] = {m, s};
  return s;
}

void clear_shadow_cache() {
  std::lock_guard<std::mutex> lock(shadow_mu);
  shadow_cache.clear();
}

Matrix shadow_map(const BimodulePtr& src, const BimodulePtr& dst, const Matrix& f) {
  return hh0(dst)->projection * f * hh0(src)->section;
}

bool theta_well_defined(const BimodulePtr& m, const BimodulePtr& n) {
  auto nm = tensor_over(n, m);
  const Field& f = m->field();
  const Matrix W = hh0(nm->result)->projection * swapped_surjection(*nm, m->dim(), n->dim());
  const Matrix Wt = W.transpose();
  const Matrix Im = Matrix::identity(f, m->dim()), In = Matrix::identity(f, n->dim());
  // W kron(X, I) = (kron(X^T, I) W^T)^T
  auto kills = [&](const Matrix& x, const Matrix& y) {
    return (kron_apply(x.transpose(), In, Wt) - kron_apply(Im, y.transpose(), Wt)).is_zero();
  };
  for (auto b : m->right_algebra()->generators())
    if (!kills(m->right_action(b), n->left_action(b))) return false;
  for (auto a : m->left_algebra()->generators())
    if (!kills(m->left_action(a), n->right_action(a))) return false;
  return true;
}

Matrix shadow_theta(const BimodulePtr& m, const BimodulePtr& n) {
  auto mn = tensor_over(m, n);
  auto nm = tensor_over(n, m);
  auto smn = hh0(mn->result), snm = hh0(nm->result);
  if (!theta_well_defined(m, n)) throw std::logic_error("shadow_theta: swap does not descend to shadows");
  Matrix t = snm->projection * swapped_surjection(*nm, m->dim(), n->dim()) * (mn->section * smn->section);
  if (rank(t) != smn->dim || smn->dim != snm->dim) throw std::logic_error("shadow_theta: not invertible");
  return t;
}

std::size_t chain_cap() {
  if (const char* s = std::getenv("MORITA_CHAIN_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 20000;
}

std::size_t sparse_rank_mod(const std::vector<SparseColumn>& cols, std::size_t rows, std::uint64_t p) {
  // Echelon basis: vectors with leading index i, stored densely.
  std::vector<std::vector<std::uint64_t>> basis;
  std::vector<long> lead(rows, -1);
  std::vector<std::uint64_t> v(rows);
  const std::size_t full = std::min(rows, cols.size());
  for (const auto& c : cols) {
    if (basis.size() == full) break;
    std::fill(v.begin(), v.end(), 0);
    bool any = false;
    for (const auto& [i, s] : c.entries) {
      auto r = to_mod(s, p);
      if (!r) throw std::domain_error("sparse_rank_mod: denominator divisible by the prime");
      v[i] = (v[i] + *r) % p;
      any = any || v[i] != 0;
    }
    if (!any) continue;
    for (std::size_t i = 0; i < rows; ++i) {
      if (v[i] == 0) continue;
      if (lead[i] < 0) {
        std::uint64_t inv = inv_mod(v[i], p);
        for (std::size_t j = i; j < rows; ++j)
          if (v[j]) v[j] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v[j]) * inv % p);
        lead[i] = static_cast<long>(basis.size());
        basis.push_back(v);
        break;
      }
      const auto& b = basis[lead[i]];
      const std::uint64_t fac = p - v[i];
      for (std::size_t j = i; j < rows; ++j)
        if (b[j]) v[j] = static_cast<std::uint64_t>((v[j] + static_cast<unsigned __int128>(fac) * b[j]) % p);
    }
  }
  return basis.size();
}

bool HochschildComplex::all_d_squared_zero() const {
  for (bool b : d_squared_zero)
    if (!b) return false;
  return true;
}

bool HochschildComplex::all_exact() const {
  for (bool b : homology_exact)
    if (!b) return false;
  return true;
}

HochschildComplex hochschild(const BimodulePtr& m, std::size_t n_max, std::size_t cap) {
  if (n_max < 1) throw std::invalid_argument("hochschild: n_max must be at least 1");
  const AlgebraPtr& A = m->left_algebra();
  if (!same_algebra(A, m->right_algebra())) throw BimoduleError("hochschild: coefficients are not an (A,A)-bimodule");
  const Field& f = m->field();
  const std::size_t d = A->dim(), dm = m->dim();
  HochschildComplex h;
  h.coefficients = m;
  h.n_max = n_max;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double size = static_cast<double>(dm) * static_cast<double>(ipow(d, n));
    if (size > static_cast<double>(cap))
      throw ResourceLimit("chain space C_" + std::to_string(n) + " has dimension " +
                          std::to_string(static_cast<unsigned long long>(size)) + ", above the cap " +
                          std::to_string(cap));
    h.chain_dims.push_back(dm * ipow(d, n));
  }

  using Terms = std::vector<std::pair<std::size_t, Scalar>>;
  auto column_terms = [&](const Matrix& x, std::size_t col) {
    Terms t;
    for (std::size_t r = 0; r < x.rows(); ++r)
      if (!x(r, col).is_zero()) t.emplace_back(r, x(r, col));
    return t;
  };
  std::vector<std::vector<Terms>> right(d), left(d), prod(d, std::vector<Terms>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t j = 0; j < dm; ++j) {
      right[a].push_back(column_terms(m->right_action(a), j));
      left[a].push_back(column_terms(m->left_action(a), j));
    }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k)
        if (!A->c(a, b, k).is_zero()) prod[a][b].emplace_back(k, A->c(a, b, k));

  h.d.resize(n_max + 1);
  std::vector<Scalar> acc;
  std::vector<std::size_t> touched;
  std::vector<std::size_t> idx;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t target = h.chain_dims[n - 1];
    acc.assign(target, Scalar::zero(f));
    std::vector<bool> hit(target, false);
    auto add = [&](std::size_t pos, const Scalar& c) {
      if (!hit[pos]) {
        hit[pos] = true;
        touched.push_back(pos);
      }
      acc[pos] += c;
    };
    const std::size_t tail = ipow(d, n - 1);
    idx.assign(n, 0);
    for (std::size_t col = 0; col < h.chain_dims[n]; ++col) {
      // decode (m, a_1 .. a_n)
      std::size_t rest = col;
      for (std::size_t t = n; t-- > 0;) {
        idx[t] = rest % d;
        rest /= d;
      }
      const std::size_t mi = rest;
      touched.clear();
      auto encode = [&](std::size_t mm, auto&& word) {
        std::size_t e = mm;
        for (std::size_t t = 0; t + 1 < n; ++t) e = e * d + word(t);
        return e;
      };
      // m a_1 (x) a_2 .. a_n
      for (const auto& [k, c] : right[idx[0]][mi]) add(encode(k, [&](std::size_t t) { return idx[t + 1]; }), c);
      // (-1)^i m (x) .. a_i a_{i+1} ..
      for (std::size_t i = 1; i < n; ++i) {
        const bool neg = i % 2 == 1;
        for (const auto& [k, c] : prod[idx[i - 1]][idx[i]]) {
          auto word = [&](std::size_t t) { return t < i - 1 ? idx[t] : (t == i - 1 ? k : idx[t + 1]); };
          add(encode(mi, word), neg ? -c : c);
        }
      }
      // (-1)^n a_n m (x) a_1 .. a_{n-1}
      const bool neg = n % 2 == 1;
      for (const auto& [k, c] : left[idx[n - 1]][mi]) add(encode(k, [&](std::size_t t) { return idx[t]; }), neg ? -c : c);
      SparseColumn sc;
      for (auto pos : touched) {
        if (!acc[pos].is_zero()) sc.entries.emplace_back(pos, acc[pos]);
        acc[pos] = Scalar::zero(f);
        hit[pos] = false;
      }
      h.d[n].push_back(std::move(sc));
    }
    (void)tail;
  }

  // d_n d_{n+1} = 0, exactly
  h.d_squared_zero.assign(n_max + 1, true);
  for (std::size_t n = 1; n < n_max; ++n) {
    const std::size_t target = h.chain_dims[n - 1];
    acc.assign(target, Scalar::zero(f));
    for (const auto& col : h.d[n + 1]) {
      touched.clear();
      for (const auto& [i, c] : col.entries)
        for (const auto& [j, e] : h.d[n][i].entries) {
          if (acc[j].is_zero()) touched.push_back(j);
          acc[j].add_product(c, e);
        }
      for (auto j : touched)
        if (!acc[j].is_zero()) {
          h.d_squared_zero[n] = false;
          acc[j] = Scalar::zero(f);
        }
    }
  }

  // Ranks: exact over F_p; over Q the rank modulo a large prime is a lower bound, certified below.
  const bool rational = f.is_rational();
  h.ranks.assign(n_max + 1, 0);
  h.rank_exact.assign(n_max + 1, true);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::size_t rows = h.chain_dims[n - 1], cols = h.chain_dims[n];
    if (!rational) {
      h.ranks[n] = sparse_rank_mod(h.d[n], rows, f.characteristic());
      continue;
    }
    if (rows * cols <= 40000) {
      Matrix dense(f, rows, cols);
      for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, s] : h.d[n][c].entries) dense(r, c) = s;
      h.ranks[n] = rank(dense);
      continue;
    }
    // d_{n-1} d_n = 0 bounds rank d_n by dim ker d_{n-1}.
    std::size_t bound = rows;
    if (n >= 2 && h.d_squared_zero[n - 1]) bound = rows - h.ranks[n - 1];
    std::optional<std::size_t> r;
    for (std::uint64_t p : {2147483647ULL, 2147483629ULL, 2147483587ULL}) {
      try {
        r = compressed_rank_mod(h.d[n], rows, std::min(bound, cols), p, 0x9e3779b97f4a7c15ULL ^ n);
        break;
      } catch (const std::domain_error&) {
      }
    }
    if (!r) throw std::runtime_error("hochschild: no usable prime for the rank computation");
    h.ranks[n] = *r;
    h.rank_exact[n] = *r == std::min(rows, cols) || *r == bound;
  }
  // rank_Q d_n <= dim C_n - rank_Q d_{n+1} <= dim C_n - rank_p d_{n+1}, so a vanishing
  // homology bound pins both neighbouring ranks.
  for (std::size_t n = 1; n < n_max; ++n)
    if (h.d_squared_zero[n] && h.chain_dims[n] == h.ranks[n] + h.ranks[n + 1]) {
      h.rank_exact[n] = true;
      h.rank_exact[n + 1] = true;
    }
  for (std::size_t n = 0; n < n_max; ++n) {
    h.homology.push_back(h.chain_dims[n] - h.ranks[n] - h.ranks[n + 1]);
    h.homology_exact.push_back(h.rank_exact[n] && h.rank_exact[n + 1]);
  }
  h.d_squared_zero.erase(h.d_squared_zero.begin());
  if (!h.d_squared_zero.empty()) h.d_squared_zero.pop_back();
  return h;
}

GradedEuler graded_euler(const BimodulePtr& m, std::size_t n_max) {
  auto h = hochschild(m, n_max);
  GradedEuler g;
  g.dims = h.homology;
  for (std::size_t i = 0; i < g.dims.size(); ++i) g.value += (i % 2 ? -1L : 1L) * static_cast<long>(g.dims[i]);
  g.stabilized = g.dims.size() >= 2 && g.dims[g.dims.size() - 1] == 0 && g.dims[g.dims.size() - 2] == 0;
  return g;
}

}  // namespace morita
