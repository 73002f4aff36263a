#include "morita/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace morita {

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, Scalar::zero(f)); }

Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v = zero_vector(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<long>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows[0].size();
  Matrix m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(f, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<Vector>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

Matrix Matrix::column(const Vector& v, const Field& f) { return from_columns(f, v.size(), {v}); }

Vector Matrix::col(std::size_t j) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
  return v;
}

Vector Matrix::row(std::size_t i) const {
  return Vector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block out of range");
  Matrix b(f_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Matrix Matrix::columns(const std::vector<std::size_t>& idx) const {
  Matrix b(f_, rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) b(i, j) = (*this)(i, idx[j]);
  return b;
}

Scalar Matrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of a non-square matrix");
  Scalar t = Scalar::zero(f_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& x = (*this)(i, j);
      if (i == j ? !x.is_one() : !x.is_zero()) return false;
    }
  return true;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vector r = zero_vector(f_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i].add_product((*this)(i, j), v[j]);
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                                " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  if (a.f_ != b.f_) throw FieldMismatch("matrix product over different fields");
  Matrix c(a.f_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) c(i, j).add_product(x, y);
      }
    }
  return c;
}

Matrix operator*(const Scalar& s, Matrix a) {
  for (auto& x : a.a_) x *= s;
  return a;
}

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
  }
  os << "]";
  return os.str();
}

Matrix hstack(const std::vector<Matrix>& ms) {
  if (ms.empty()) throw std::invalid_argument("hstack of nothing");
  std::size_t r = ms[0].rows(), c = 0;
  for (const auto& m : ms) {
    if (m.rows() != r) throw std::invalid_argument("hstack: row mismatch");
    c += m.cols();
  }
  Matrix out(ms[0].field(), r, c);
  std::size_t off = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(i, off + j) = m(i, j);
    off += m.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix>& ms) {
  if (ms.empty()) throw std::invalid_argument("vstack of nothing");
  std::size_t c = ms[0].cols(), r = 0;
  for (const auto& m : ms) {
    if (m.cols() != c) throw std::invalid_argument("vstack: column mismatch");
    r += m.rows();
  }
  Matrix out(ms[0].field(), r, c);
  std::size_t off = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < c; ++j) out(off + i, j) = m(i, j);
    off += m.rows();
  }
  return out;
}

namespace {

using IntRow = std::vector<mpz_class>;

void make_primitive(IntRow& row) {
  mpz_class g = 0;
  for (const auto& x : row)
    if (sgn(x) != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  if (g > 1)
    for (auto& x : row)
      if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

std::vector<IntRow> integer_rows(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<IntRow> rows(R, IntRow(C));
  std::vector<mpq_class> q(C);
  for (std::size_t i = 0; i < R; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j) {
      if (m(i, j).is_zero()) continue;
      q[j] = m(i, j).rational();
      if (q[j].get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q[j].get_den_mpz_t());
    }
    for (std::size_t j = 0; j < C; ++j)
      if (!m(i, j).is_zero()) rows[i][j] = l == 1 ? q[j].get_num() : q[j].get_num() * (l / q[j].get_den());
    make_primitive(rows[i]);
  }
  return rows;
}

// Fraction-free Gauss-Jordan on primitive integer rows. Returns rows scaled so that pivots
// divide out exactly at the end.
Rref rref_fraction_free(const Field& f, std::vector<IntRow> rows, std::size_t C) {
  const std::size_t R = rows.size();
  Rref out{Matrix(f, R, C), {}, 0};
  std::size_t row = 0;
  mpz_class g, mp, ma;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    // any nonzero pivot gives the same reduced form; take the smallest
    std::size_t p = R;
    for (std::size_t i = row; i < R; ++i)
      if (sgn(rows[i][c]) != 0 && (p == R || mpz_cmpabs(rows[i][c].get_mpz_t(), rows[p][c].get_mpz_t()) < 0)) p = i;
    if (p == R) continue;
    std::swap(rows[p], rows[row]);
    const IntRow& pr = rows[row];
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || sgn(rows[i][c]) == 0) continue;
      IntRow& ri = rows[i];
      mpz_gcd(g.get_mpz_t(), pr[c].get_mpz_t(), ri[c].get_mpz_t());
      mpz_divexact(mp.get_mpz_t(), pr[c].get_mpz_t(), g.get_mpz_t());
      mpz_divexact(ma.get_mpz_t(), ri[c].get_mpz_t(), g.get_mpz_t());
      const bool scale = mp != 1;
      for (std::size_t j = 0; j < C; ++j) {
        if (scale && sgn(ri[j]) != 0) ri[j] *= mp;
        if (j >= c && sgn(pr[j]) != 0) mpz_submul(ri[j].get_mpz_t(), ma.get_mpz_t(), pr[j].get_mpz_t());
      }
      make_primitive(ri);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = row;
  for (std::size_t i = 0; i < row; ++i) {
    const mpz_class& pv = rows[i][out.pivots[i]];
    for (std::size_t j = 0; j < C; ++j)
      if (sgn(rows[i][j]) != 0) {
        mpq_class q(rows[i][j], pv);
        q.canonicalize();
        out.reduced(i, j) = Scalar(f, q);
      }
  }
  return out;
}

// 31-bit primes, largest first.
const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> ps = [] {
    std::vector<std::uint64_t> v;
    for (std::uint64_t p = (1ULL << 31) - 1; v.size() < 96; p -= 2)
      if (is_prime(p)) v.push_back(p);
    return v;
  }();
  return ps;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::uint64_t r = 1, e = p - 2;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// rref modulo p: reduced rows (rank x C, row-major) and pivots.
void rref_mod(const std::vector<IntRow>& rows, std::size_t C, std::uint64_t p, std::vector<std::uint64_t>& out,
              std::vector<std::size_t>& pivots) {
  const std::size_t R = rows.size();
  std::vector<std::uint64_t> a(R * C);
  for (std::size_t i = 0; i < R; ++i)
    for (std::size_t j = 0; j < C; ++j)
      if (sgn(rows[i][j]) != 0) a[i * C + j] = mpz_fdiv_ui(rows[i][j].get_mpz_t(), p);
  pivots.clear();
  std::size_t row = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t piv = row;
    while (piv < R && a[piv * C + c] == 0) ++piv;
    if (piv == R) continue;
    if (piv != row) std::swap_ranges(a.begin() + piv * C, a.begin() + (piv + 1) * C, a.begin() + row * C);
    std::uint64_t* pr = &a[row * C];
    std::uint64_t inv = inv_mod(pr[c], p);
    nz.clear();
    for (std::size_t j = c; j < C; ++j)
      if (pr[j]) {
        pr[j] = pr[j] * inv % p;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < R; ++i) {
      std::uint64_t* ri = &a[i * C];
      if (i == row || ri[c] == 0) continue;
      std::uint64_t fac = p - ri[c];
      for (auto j : nz) ri[j] = (ri[j] + fac * pr[j]) % p;
    }
    pivots.push_back(c);
    ++row;
  }
  out.assign(a.begin(), a.begin() + row * C);
}

// True when pivot list a is better than b: its pivots come earlier, or it has more of them.
bool better_pivots(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() > b.size();
}

bool reconstruct(const mpz_class& u, const mpz_class& m, const mpz_class& bound, mpq_class& out) {
  if (sgn(u) == 0) {
    out = 0;
    return true;
  }
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (abs(t1) > bound || sgn(t1) == 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

// Exact check that every row of the integer matrix lies in the span of the candidate rref,
// i.e. rows == rows[:, pivots] * cand. Together with rank(cand) = rank mod p this certifies cand.
bool certify(const std::vector<IntRow>& rows, std::size_t C, const std::vector<std::size_t>& pivots,
             const std::vector<std::vector<mpq_class>>& cand) {
  const std::size_t k = pivots.size();
  std::vector<IntRow> z(k, IntRow(C));
  std::vector<mpz_class> d(k);
  std::vector<std::vector<std::size_t>> nz(k);
  for (std::size_t t = 0; t < k; ++t) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < C; ++j)
      if (sgn(cand[t][j]) != 0) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), cand[t][j].get_den_mpz_t());
        nz[t].push_back(j);
      }
    d[t] = l;
    for (auto j : nz[t]) z[t][j] = cand[t][j].get_num() * (l / cand[t][j].get_den());
  }
  IntRow acc(C);
  mpz_class L, w;
  for (const auto& r : rows) {
    L = 1;
    bool any = false;
    for (std::size_t t = 0; t < k; ++t)
      if (sgn(r[pivots[t]]) != 0) {
        mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), d[t].get_mpz_t());
        any = true;
      }
    if (!any) {
      for (const auto& x : r)
        if (sgn(x) != 0) return false;
      continue;
    }
    for (auto& x : acc) x = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if (sgn(r[pivots[t]]) == 0) continue;
      w = r[pivots[t]] * (L / d[t]);
      for (auto j : nz[t]) mpz_addmul(acc[j].get_mpz_t(), w.get_mpz_t(), z[t][j].get_mpz_t());
    }
    for (std::size_t j = 0; j < C; ++j) {
      w = r[j] * L;
      if (w != acc[j]) return false;
    }
  }
  return true;
}

// Over Q: rref modulo a sequence of primes, combined by CRT and rational reconstruction, then
// certified exactly. Falls back to fraction-free elimination if certification keeps failing.
Rref rref_rational(const Matrix& m) {
  const Field& f = m.field();
  const std::size_t C = m.cols();
  std::vector<IntRow> rows = integer_rows(m);

  std::vector<std::size_t> best, piv;
  std::vector<std::uint64_t> res;
  std::vector<mpz_class> X;
  mpz_class mod = 1;
  std::vector<std::vector<mpq_class>> cand;
  for (auto p : small_primes()) {
    rref_mod(rows, C, p, res, piv);
    if (mod == 1 || better_pivots(piv, best)) {
      best = piv;
      X.assign(res.size(), mpz_class(0));
      for (std::size_t e = 0; e < res.size(); ++e) X[e] = res[e];
      mod = p;
    } else if (piv == best) {
      std::uint64_t minv = inv_mod(mpz_fdiv_ui(mod.get_mpz_t(), p), p);
      for (std::size_t e = 0; e < res.size(); ++e) {
        std::uint64_t xr = mpz_fdiv_ui(X[e].get_mpz_t(), p);
        if (xr == res[e]) continue;
        std::uint64_t h = (res[e] + p - xr) % p * minv % p;
        mpz_addmul_ui(X[e].get_mpz_t(), mod.get_mpz_t(), h);
      }
      mod *= p;
    } else {
      continue;
    }
    mpz_class bound;
    mpz_class half = mod / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    const std::size_t k = best.size();
    cand.assign(k, std::vector<mpq_class>(C));
    bool ok = true;
    for (std::size_t t = 0; t < k && ok; ++t)
      for (std::size_t j = 0; j < C && ok; ++j) ok = reconstruct(X[t * C + j], mod, bound, cand[t][j]);
    if (!ok || !certify(rows, C, best, cand)) continue;
    Rref out{Matrix(f, m.rows(), C), best, k};
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t j = 0; j < C; ++j)
        if (sgn(cand[t][j]) != 0) out.reduced(t, j) = Scalar(f, cand[t][j]);
    return out;
  }
  return rref_fraction_free(f, std::move(rows), C);
}

}  // namespace

constexpr std::size_t kDirectRrefLimit = 16384;

Rref rref(const Matrix& m) {
  for (const auto& x : m.entries())
    if (x.field() != m.field())
      throw FieldMismatch("rref: entry over " + x.field().name() + " in a matrix over " + m.field().name());
  // Small rational matrices are cheaper by direct elimination; the reduced form is the same.
  if (m.field().is_rational() && m.rows() * m.cols() > kDirectRrefLimit) return rref_rational(m);
  Rref out{m, {}, 0};
  Matrix& r = out.reduced;
  const std::size_t R = r.rows(), C = r.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t p = row;
    while (p < R && r(p, c).is_zero()) ++p;
    if (p == R) continue;
    if (p != row)
      for (std::size_t j = 0; j < C; ++j) std::swap(r(p, j), r(row, j));
    Scalar inv = r(row, c).inverse();
    for (std::size_t j = c; j < C; ++j)
      if (!r(row, j).is_zero()) r(row, j) *= inv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || r(i, c).is_zero()) continue;
      Scalar f = -r(i, c);
      for (std::size_t j = c; j < C; ++j)
        if (!r(row, j).is_zero()) r(i, j).add_product(f, r(row, j));
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = out.pivots.size();
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

std::vector<Vector> kernel_basis(const Matrix& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vector v = unit_vector(m.field(), m.cols(), j);
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: right-hand side has wrong length");
  Matrix aug = hstack({m, Matrix::column(b, m.field())});
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(m.field(), m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.reduced(i, m.cols());
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  Rref r = rref(hstack({m, Matrix::identity(m.field(), n)}));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) return std::nullopt;
  return r.reduced.block(0, n, n, n);
}

static QuotientSpace quotient_from_rref(const Field& f, std::size_t n, const Rref& r) {
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  QuotientSpace q;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) q.basis.push_back(j);
  q.dim = q.basis.size();
  q.projection = Matrix(f, q.dim, n);
  q.section = Matrix(f, n, q.dim);
  for (std::size_t t = 0; t < q.dim; ++t) {
    q.projection(t, q.basis[t]) = Scalar::one(f);
    q.section(q.basis[t], t) = Scalar::one(f);
    for (std::size_t i = 0; i < r.rank; ++i) q.projection(t, r.pivots[i]) = -r.reduced(i, q.basis[t]);
  }
  return q;
}

QuotientSpace quotient(const Field& f, std::size_t ambient_dim, const std::vector<Vector>& subspace) {
  Matrix rows(f, subspace.size(), ambient_dim);
  for (std::size_t i = 0; i < subspace.size(); ++i) {
    if (subspace[i].size() != ambient_dim) throw std::invalid_argument("quotient: vector outside ambient space");
    for (std::size_t j = 0; j < ambient_dim; ++j) rows(i, j) = subspace[i][j];
  }
  return quotient_from_rref(f, ambient_dim, rref(rows));
}

QuotientSpace quotient_by_columns(const Matrix& m) {
  return quotient_from_rref(m.field(), m.rows(), rref(m.transpose()));
}

Matrix kron(const Matrix& f, const Matrix& g) {
  Matrix k(f.field(), f.rows() * g.rows(), f.cols() * g.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      const Scalar& x = f(i, j);
      if (x.is_zero()) continue;
      for (std::size_t a = 0; a < g.rows(); ++a)
        for (std::size_t b = 0; b < g.cols(); ++b)
          if (!g(a, b).is_zero()) k(i * g.rows() + a, j * g.cols() + b) = x * g(a, b);
    }
  return k;
}

Matrix kron_apply(const Matrix& f, const Matrix& g, const Matrix& x) {
  const std::size_t p = f.rows(), q = f.cols(), r = g.rows(), s = g.cols();
  if (x.rows() != q * s) throw std::invalid_argument("kron_apply: dimension mismatch");
  const Field& F = x.field();
  Matrix out(F, p * r, x.cols());
  Matrix t(F, q, r);
  for (std::size_t c = 0; c < x.cols(); ++c) {
    // t = X * g^T where X[a][b] = x[a*s+b][c]
    for (auto& e : t.entries()) e = Scalar::zero(F);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < s; ++b) {
        const Scalar& v = x(a * s + b, c);
        if (v.is_zero()) continue;
        for (std::size_t j = 0; j < r; ++j)
          if (!g(j, b).is_zero()) t(a, j).add_product(v, g(j, b));
      }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t a = 0; a < q; ++a) {
        const Scalar& w = f(i, a);
        if (w.is_zero()) continue;
        for (std::size_t j = 0; j < r; ++j)
          if (!t(a, j).is_zero()) out(i * r + j, c).add_product(w, t(a, j));
      }
  }
  return out;
}

std::optional<EntryDiff> first_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    return EntryDiff{a.rows(), a.cols(), "shape " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()),
                     "shape " + std::to_string(b.rows()) + "x" + std::to_string(b.cols())};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return EntryDiff{i, j, a(i, j).str(), b(i, j).str()};
  return std::nullopt;
}

}  // namespace morita
