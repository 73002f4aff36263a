#pragma once

#include "morita/bimodule.hpp"

#include <optional>
#include <string>

namespace morita {

class DualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an operation is outside the strict (separable) scope.
class ScopeRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// M: (A,B), N: (B,A), eta: U_A -> M (.) N, eps: N (.) M -> U_B.
// M is right dualizable with right dual N; equivalently N is left dualizable with left dual M.
struct DualPair {
  BimodulePtr M, N;
  TensorPtr MN, NM;
  Matrix eta;  // dim(M (.) N) x dim A
  Matrix eps;  // dim B x dim(N (.) M)
};

struct TriangleReport {
  bool left_ok = false;   // M -> M
  bool right_ok = false;  // N -> N
  std::optional<EntryDiff> left_witness, right_witness;
  bool ok() const { return left_ok && right_ok; }
};

// Pair with the given data; only shapes are checked.
DualPair make_pair(const BimodulePtr& m, const BimodulePtr& n, Matrix eta, Matrix eps);

// N = hom_right(M, U_B). Throws DualityError if M is not f.g. projective on the right.
DualPair right_dual(const BimodulePtr& m);
// For M: (B,A), the pair (L, M) with L = hom_left(M, U_B).
DualPair left_dual(const BimodulePtr& m);

TriangleReport verify_triangles(const DualPair& p);

// The same pair with N rewritten in the basis given by the columns of q.
DualPair transport_dual(const DualPair& p, const Matrix& q);

// For phi: P (.) M -> M (.) Q, the mate N (.) P -> Q (.) N.
Matrix mate(const BimodulePtr& p, const BimodulePtr& q, const Matrix& phi, const DualPair& pair);

struct DualizabilityWitness {
  AlgebraPtr A, Aop, Ae;  // Ae = A (x) A^op
  BimodulePtr C;          // (k, A (x) A^op)
  BimodulePtr E;          // (A^op (x) A, k)
  // (C x U_A) (.) (U_A x E) -> U_A and (U_A^op x C) (.) (E x U_A^op) -> U_A^op.
  BimodulePtr snake_A, snake_Aop;
  Matrix triangle_A, triangle_Aop;
};

DualizabilityWitness one_dualizability_witness(const AlgebraPtr& a);

struct TwoDualizability {
  bool ok = false;
  std::string reason;
  std::optional<DualPair> C_right, C_left, E_right, E_left;
};

// C and E must have right and left duals. The right dual of E and the left dual of C
// live over k and always exist.
TwoDualizability is_two_dualizable(const AlgebraPtr& a);

// Throws ScopeRefusal unless A is separable.
void require_two_dualizable(const AlgebraPtr& a);

}  // namespace morita
