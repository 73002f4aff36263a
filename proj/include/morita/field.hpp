#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

namespace morita {

class FieldMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground field: rationals (p == 0) or a prime field F_p.
class Field {
 public:
  Field() = default;
  static Field rationals() { return Field(); }
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

// Rationals are kept as a reduced int64 fraction and promoted to GMP only when they overflow.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, long v);
  Scalar(const Field& f, const mpq_class& v);
  Scalar(const Scalar& o) : f_(o.f_), n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this != &o) {
      f_ = o.f_;
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  static Scalar zero(const Field& f) { return Scalar(f, 0L); }
  static Scalar one(const Field& f) { return Scalar(f, 1L); }

  const Field& field() const { return f_; }
  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }

  // Residue for prime fields, the exact value for rationals.
  std::uint64_t residue() const { return static_cast<std::uint64_t>(n_); }
  mpq_class rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  // this += a*b, the hot loop of elimination
  void add_product(const Scalar& a, const Scalar& b);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // "p/q" (integers without denominator) or "r mod p"
  std::string str() const;

 private:
  void check(const Scalar& o) const {
    if (f_ != o.f_) throw FieldMismatch("field mismatch: " + f_.name() + " vs " + o.f_.name());
  }
  void set(const mpq_class& q);
  void set(__int128 num, __int128 den);
  Field f_;
  std::int64_t n_ = 0;  // numerator or residue
  std::int64_t d_ = 1;
  std::unique_ptr<mpq_class> big_;
};

}  // namespace morita
