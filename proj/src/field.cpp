#include "morita/field.hpp"

#include <climits>

namespace morita {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  if (p >= (1ULL << 62)) throw std::invalid_argument("prime too large: " + std::to_string(p));
  Field f;
  f.p_ = p;
  return f;
}

std::string Field::name() const {
  return p_ == 0 ? "Q" : "F_" + std::to_string(p_);
}

static std::uint64_t mod_of(const mpz_class& z, std::uint64_t p) {
  return mpz_fdiv_ui(z.get_mpz_t(), p);
}

static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

static std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
  while (b) {
    if (a <= UINT64_MAX && b <= UINT64_MAX) {
      std::uint64_t x = static_cast<std::uint64_t>(a), y = static_cast<std::uint64_t>(b);
      while (y) {
        std::uint64_t t = x % y;
        x = y;
        y = t;
      }
      return x;
    }
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(i128 x) { return x > INT64_MIN && x <= INT64_MAX; }

mpz_class to_mpz(i128 x) {
  bool neg = x < 0;
  u128 u = neg ? static_cast<u128>(-x) : static_cast<u128>(x);
  mpz_class z = static_cast<unsigned long>(u >> 64);
  z <<= 64;
  z += static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  return neg ? mpz_class(-z) : z;
}

}  // namespace

void Scalar::set(const mpq_class& q) {
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t()) &&
      q.get_num() != LONG_MIN) {
    n_ = q.get_num().get_si();
    d_ = q.get_den().get_si();
    big_.reset();
  } else if (big_) {
    *big_ = q;
  } else {
    big_ = std::make_unique<mpq_class>(q);
  }
}

// num/den with den > 0, reduced here.
void Scalar::set(i128 num, i128 den) {
  if (num == 0) {
    n_ = 0;
    d_ = 1;
    big_.reset();
    return;
  }
  if (den != 1) {
    u128 g = gcd128(num < 0 ? static_cast<u128>(-num) : static_cast<u128>(num), static_cast<u128>(den));
    if (g != 1) {
      num /= static_cast<i128>(g);
      den /= static_cast<i128>(g);
    }
  }
  if (fits(num) && fits(den)) {
    n_ = static_cast<std::int64_t>(num);
    d_ = static_cast<std::int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  set(q);
}

Scalar::Scalar(const Field& f, long v) : f_(f) {
  if (f.is_rational()) {
    if (v == LONG_MIN)
      set(mpq_class(mpz_class(v)));
    else
      n_ = v;
  } else {
    long p = static_cast<long>(f.characteristic());
    long r = v % p;
    if (r < 0) r += p;
    n_ = r;
  }
}

Scalar::Scalar(const Field& f, const mpq_class& v) : f_(f) {
  if (f.is_rational()) {
    mpq_class q = v;
    q.canonicalize();
    set(q);
  } else {
    std::uint64_t p = f.characteristic();
    std::uint64_t num = mod_of(v.get_num(), p);
    std::uint64_t den = mod_of(v.get_den(), p);
    if (den == 0) throw std::domain_error("denominator divisible by " + std::to_string(p));
    n_ = static_cast<std::int64_t>(mulmod(num, powmod(den, p - 2, p), p));
  }
}

mpq_class Scalar::rational() const {
  if (big_) return *big_;
  if (!f_.is_rational()) return mpq_class(static_cast<long>(n_));
  return mpq_class(static_cast<long>(n_), static_cast<long>(d_));
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (f_.is_rational()) {
    if (big_)
      *s.big_ = -*big_;
    else
      s.n_ = -n_;
  } else if (n_ != 0) {
    s.n_ = static_cast<std::int64_t>(f_.characteristic()) - n_;
  }
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (!f_.is_rational()) {
    std::uint64_t r = residue() + o.residue();
    if (r >= f_.characteristic()) r -= f_.characteristic();
    n_ = static_cast<std::int64_t>(r);
  } else if (big_ || o.big_) {
    set(rational() + o.rational());
  } else if (d_ == 1 && o.d_ == 1) {
    set(static_cast<i128>(n_) + o.n_, 1);
  } else if (d_ == o.d_) {
    set(static_cast<i128>(n_) + o.n_, d_);
  } else {
    set(static_cast<i128>(n_) * o.d_ + static_cast<i128>(o.n_) * d_, static_cast<i128>(d_) * o.d_);
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (!f_.is_rational()) {
    n_ = static_cast<std::int64_t>(mulmod(residue(), o.residue(), f_.characteristic()));
  } else if (big_ || o.big_) {
    set(rational() * o.rational());
  } else if (d_ == 1 && o.d_ == 1) {
    set(static_cast<i128>(n_) * o.n_, 1);
  } else {
    set(static_cast<i128>(n_) * o.n_, static_cast<i128>(d_) * o.d_);
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar s = *this;
  if (!f_.is_rational()) {
    s.n_ = static_cast<std::int64_t>(powmod(residue(), f_.characteristic() - 2, f_.characteristic()));
  } else if (big_) {
    s.set(1 / *big_);
  } else if (n_ < 0) {
    s.n_ = -d_;
    s.d_ = -n_;
  } else {
    s.n_ = d_;
    s.d_ = n_;
  }
  return s;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check(o);
  return *this *= o.inverse();
}

void Scalar::add_product(const Scalar& a, const Scalar& b) {
  check(a);
  check(b);
  if (!f_.is_rational()) {
    n_ = static_cast<std::int64_t>((residue() + mulmod(a.residue(), b.residue(), f_.characteristic())) %
                                   f_.characteristic());
    return;
  }
  if (a.is_zero() || b.is_zero()) return;
  if (!big_ && !a.big_ && !b.big_ && d_ == 1 && a.d_ == 1 && b.d_ == 1) {
    set(static_cast<i128>(n_) + static_cast<i128>(a.n_) * b.n_, 1);
    return;
  }
  *this += a * b;
}

bool Scalar::operator==(const Scalar& o) const {
  if (f_ != o.f_) return false;
  if (big_ || o.big_) return big_ && o.big_ && *big_ == *o.big_;
  return n_ == o.n_ && d_ == o.d_;
}

std::string Scalar::str() const {
  if (f_.is_rational()) return rational().get_str();
  return std::to_string(residue()) + " mod " + std::to_string(f_.characteristic());
}

}  // namespace morita
