#pragma once

#include "morita/algebra.hpp"

#include <cstdint>
#include <memory>

namespace morita {

class BimoduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An (A,B)-bimodule: left_action(i) is m -> e_i m, right_action(j) is m -> m e_j.
class Bimodule {
 public:
  Bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
           std::vector<Matrix> right_action, bool validate = true);

  const AlgebraPtr& left_algebra() const { return A_; }
  const AlgebraPtr& right_algebra() const { return B_; }
  const Field& field() const { return A_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix& left_action(std::size_t i) const { return left_[i]; }
  const Matrix& right_action(std::size_t j) const { return right_[j]; }
  const std::vector<Matrix>& left_actions() const { return left_; }
  const std::vector<Matrix>& right_actions() const { return right_; }
  Matrix left_action_of(const Vector& a) const;
  Matrix right_action_of(const Vector& b) const;

  // Throws BimoduleError naming the first violated law.
  void validate() const;

 private:
  AlgebraPtr A_, B_;
  std::size_t dim_;
  std::vector<Matrix> left_, right_;
};

using BimodulePtr = std::shared_ptr<const Bimodule>;

BimodulePtr make_bimodule(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                          std::vector<Matrix> right_action);
BimodulePtr unit_bimodule(const AlgebraPtr& a);

bool is_intertwiner(const Bimodule& src, const Bimodule& dst, const Matrix& f);

struct BimoduleMap {
  BimodulePtr source, target;
  Matrix matrix;
};
BimoduleMap make_map(const BimodulePtr& src, const BimodulePtr& dst, Matrix f);

struct TensorWitness {
  BimodulePtr left, right, result;
  Matrix surjection;  // result.dim x (left.dim * right.dim)
  Matrix section;     // (left.dim * right.dim) x result.dim
  Vector pure_tensor(const Vector& m, const Vector& n) const;
};
using TensorPtr = std::shared_ptr<const TensorWitness>;

// M (x)_B N. Results are memoized per (M, N) pointer pair.
TensorPtr tensor_over(const BimodulePtr& m, const BimodulePtr& n);
void clear_tensor_cache();

// f (.) g : src.left (.) src.right -> dst.left (.) dst.right
Matrix tensor_maps(const TensorWitness& src, const TensorWitness& dst, const Matrix& f, const Matrix& g);
Matrix tensor_maps(const BimodulePtr& m, const BimodulePtr& n, const BimodulePtr& m2, const BimodulePtr& n2,
                   const Matrix& f, const Matrix& g);

// (X (.) Y) (.) Z -> X (.) (Y (.) Z) and back.
Matrix associator(const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& z);
Matrix associator_inverse(const BimodulePtr& x, const BimodulePtr& y, const BimodulePtr& z);
// U_A (.) M -> M, M (.) U_B -> M and inverses.
Matrix left_unitor(const BimodulePtr& m);
Matrix left_unitor_inverse(const BimodulePtr& m);
Matrix right_unitor(const BimodulePtr& m);
Matrix right_unitor_inverse(const BimodulePtr& m);

// Space of linear maps cut out by linear conditions, kept as a reduced row basis:
// coordinates of a member are its entries at the pivot positions.
struct HomSpace {
  BimodulePtr result;
  std::size_t rows = 0, cols = 0;  // shape of member matrices
  Matrix basis;                    // dim x (rows*cols), rows in rref
  std::vector<std::size_t> pivots;
  Matrix member(std::size_t i) const;
  Matrix member_of(const Vector& coords) const;
  Vector coordinates(const Matrix& f) const;
};

// Right-B-linear maps M -> N for M: (A,B), N: (A',B); an (A',A)-bimodule via (a' f a)(m) = a' f(a m).
HomSpace hom_right(const BimodulePtr& m, const BimodulePtr& n);
// Left-B-linear maps M -> N for M: (B,A), N: (B,A'); an (A,A')-bimodule via (a f a')(m) = f(m a) a'.
HomSpace hom_left(const BimodulePtr& m, const BimodulePtr& n);

BimodulePtr external_tensor(const BimodulePtr& m, const BimodulePtr& n);
// For h: A -> B (matrix dim B x dim A), the (B,A)-bimodule B with right action through h.
BimodulePtr base_change(const AlgebraPtr& a, const AlgebraPtr& b, const Matrix& h);
BimodulePtr direct_sum(const std::vector<BimodulePtr>& ms);
// Same module written in the basis given by the columns of p (invertible).
BimodulePtr change_basis(const BimodulePtr& m, const Matrix& p);

// Basis of Hom_{(A,B)}(M, N) as matrices.
std::vector<Matrix> intertwiner_basis(const BimodulePtr& m, const BimodulePtr& n);
BimoduleMap random_bimodule_map(const BimodulePtr& m, const BimodulePtr& n, std::uint64_t seed);
// Seeded random (A,B)-bimodule: a sum of cyclic sub-bimodules of A (x) B, then a random change of basis.
BimodulePtr random_bimodule(const AlgebraPtr& a, const AlgebraPtr& b, std::uint64_t seed, std::size_t max_dim = 8);

// Deterministic small-integer generator shared by the random constructions.
class SeededInts {
 public:
  explicit SeededInts(std::uint64_t seed);
  long next(long lo, long hi);  // inclusive
  std::uint64_t raw();

 private:
  std::uint64_t state_;
};

Matrix random_matrix(const Field& f, std::size_t rows, std::size_t cols, SeededInts& rng, long lo = -3, long hi = 3);
// Product of unit lower and unit upper triangular random matrices; always invertible.
Matrix random_invertible(const Field& f, std::size_t n, SeededInts& rng);

}  // namespace morita
