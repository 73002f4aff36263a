#pragma once

#include "morita/matrix.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace morita {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structure constants are stored flat: c[(i*dim + j)*dim + k] is the coefficient
// of e_k in e_i e_j.
class Algebra {
 public:
  // check = false skips the associativity and unit checks, for algebras built from verified ones.
  Algebra(const Field& f, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::string name = "",
          bool check = true);

  const Field& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return mult_[(i * dim_ + j) * dim_ + k]; }
  const std::vector<Scalar>& structure_constants() const { return mult_; }
  const Vector& unit() const { return unit_; }

  // Matrices of x -> e_i x and x -> x e_i.
  const Matrix& left_mult(std::size_t i) const { return left_[i]; }
  const Matrix& right_mult(std::size_t i) const { return right_[i]; }
  Matrix left_mult_of(const Vector& a) const;
  Matrix right_mult_of(const Vector& a) const;

  Vector multiply(const Vector& u, const Vector& v) const;
  Vector basis(std::size_t i) const { return unit_vector(f_, dim_, i); }

  // Basis indices that generate the algebra together with 1.
  const std::vector<std::size_t>& generators() const { return gens_; }

  bool same_structure(const Algebra& o) const;

  // Memoized separability_idempotent(*this).
  const std::optional<Vector>& separability() const;

 private:
  Field f_;
  std::size_t dim_;
  std::vector<Scalar> mult_;
  Vector unit_;
  std::string name_;
  std::vector<Matrix> left_, right_;
  std::vector<std::size_t> gens_;
  mutable std::once_flag sep_once_;
  mutable std::optional<Vector> sep_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

AlgebraPtr new_algebra(const Field& f, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::string name = "");
AlgebraPtr ground_field(const Field& f);
// k x k x ... x k (n copies).
AlgebraPtr product_algebra(const Field& f, std::size_t n);
// table[i][j] = index of g_i g_j.
AlgebraPtr group_algebra(const Field& f, const std::vector<std::vector<std::size_t>>& table, std::string name = "");
AlgebraPtr matrix_algebra(const Field& f, std::size_t n);
AlgebraPtr path_algebra(const Field& f, std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& arrows);
// k[x]/x^n
AlgebraPtr truncated_polynomial(const Field& f, std::size_t n);
AlgebraPtr opposite(const AlgebraPtr& a);
AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b);
AlgebraPtr enveloping(const AlgebraPtr& a);

std::optional<Vector> separability_idempotent(const Algebra& a);
std::vector<Vector> center(const Algebra& a);

// Checks an algebra map given by its matrix (dim B x dim A).
bool is_algebra_homomorphism(const Algebra& a, const Algebra& b, const Matrix& h);

// Group tables used throughout.
std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n);
std::vector<std::vector<std::size_t>> product_group_table(const std::vector<std::vector<std::size_t>>& g,
                                                          const std::vector<std::vector<std::size_t>>& h);
// S_n with elements listed in lexicographic order of permutations; element 0 is the identity.
std::vector<std::vector<std::size_t>> symmetric_group_table(std::size_t n);
std::vector<std::vector<std::size_t>> permutations(std::size_t n);
std::size_t group_identity(const std::vector<std::vector<std::size_t>>& table);
std::size_t group_inverse(const std::vector<std::vector<std::size_t>>& table, std::size_t g);

}  // namespace morita
