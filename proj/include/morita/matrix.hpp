#pragma once

#include "morita/field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace morita {

using Vector = std::vector<Scalar>;

Vector zero_vector(const Field& f, std::size_t n);
Vector unit_vector(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);

// Dense row-major matrix. Every entry carries its field; operations check agreement.
class Matrix {
 public:
  Matrix() = default;
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<long>>& rows);
  static Matrix from_columns(const Field& f, std::size_t rows, const std::vector<Vector>& cols);
  static Matrix column(const Vector& v, const Field& f);

  const Field& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<Scalar>& entries() const { return a_; }
  std::vector<Scalar>& entries() { return a_; }

  Vector col(std::size_t j) const;
  Vector row(std::size_t i) const;
  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix columns(const std::vector<std::size_t>& idx) const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_identity() const;

  Vector apply(const Vector& v) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, Matrix a);
  Matrix operator-() const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Field f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

Matrix hstack(const std::vector<Matrix>& ms);
Matrix vstack(const std::vector<Matrix>& ms);

struct Rref {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};

Rref rref(const Matrix& m);
std::size_t rank(const Matrix& m);
std::vector<Vector> kernel_basis(const Matrix& m);
std::optional<Vector> solve(const Matrix& m, const Vector& b);
std::optional<Matrix> inverse(const Matrix& m);

struct QuotientSpace {
  std::size_t dim = 0;
  Matrix projection;  // dim x ambient
  Matrix section;     // ambient x dim
  std::vector<std::size_t> basis;  // ambient coordinates kept
};

QuotientSpace quotient(const Field& f, std::size_t ambient_dim, const std::vector<Vector>& subspace);
// Quotient by the column space of m.
QuotientSpace quotient_by_columns(const Matrix& m);

Matrix kron(const Matrix& f, const Matrix& g);
// kron(f, g) * x without forming the Kronecker product.
Matrix kron_apply(const Matrix& f, const Matrix& g, const Matrix& x);

// First entry (row, col) where a and b differ, if any.
struct EntryDiff {
  std::size_t row = 0, col = 0;
  std::string left, right;
};
std::optional<EntryDiff> first_difference(const Matrix& a, const Matrix& b);

}  // namespace morita
