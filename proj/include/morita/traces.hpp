#pragma once

#include "morita/duality.hpp"
#include "morita/shadow.hpp"

#include <optional>
#include <string>
#include <vector>

namespace morita {

struct TraceMap {
  ShadowPtr source, target;
  Matrix matrix;  // target.dim x source.dim
};

enum class Verdict { pass, fail, skipped };
std::string verdict_name(Verdict v);

struct InstanceResult {
  std::string description;
  std::uint64_t seed = 0;
  std::string left, right;
  bool pass = false;
  std::optional<EntryDiff> witness;
};

struct TheoremReport {
  std::string theorem;
  Verdict verdict = Verdict::pass;
  std::string reason;  // for skipped reports
  std::vector<InstanceResult> instances;

  void add(InstanceResult r);
  void skip(std::string why);
  bool passed() const { return verdict == Verdict::pass; }
};

InstanceResult compare_matrices(std::string description, std::uint64_t seed, const Matrix& left, const Matrix& right);
InstanceResult compare_scalars(std::string description, std::uint64_t seed, const Scalar& left, const Scalar& right);

// <U_A> -> <M (.) N> -> <N (.) M> -> <U_B>.
TraceMap euler_char(const DualPair& pair);

// For phi: P (.) M -> M (.) Q and a right dual pair (M, N), the map <P> -> <Q>.
TraceMap twisted_trace(const BimodulePtr& p, const BimodulePtr& q, const Matrix& phi, const DualPair& pair);
// Mirror construction for psi: N (.) P -> Q (.) N, using the same pair (M, N) with M as left dual of N.
TraceMap left_twisted_trace(const BimodulePtr& p, const BimodulePtr& q, const Matrix& psi, const DualPair& pair);

Scalar scalar_trace(const TraceMap& f);
Scalar scalar_trace(const Matrix& f);

enum class TraceOrder { M_first, N_first };

// phi: M (.) N -> N (.) M over (A,A). left_pair is a left dual pair for M (left_pair.N == M),
// right_pair a right dual pair for N (right_pair.M == N).
Scalar iterated_trace(const Matrix& phi, const DualPair& left_pair, const DualPair& right_pair, TraceOrder order);
// Builds both pairs; throws ScopeRefusal when A is not separable.
Scalar iterated_trace(const BimodulePtr& m, const BimodulePtr& n, const Matrix& phi, TraceOrder order);

TheoremReport check_main_theorem(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                 std::size_t max_dim = 4);

// f1: Q1 (.) M1 -> M1 (.) Q2, f2: Q2 (.) M2 -> M2 (.) Q3. Compares the trace of the pasted map over
// M1 (.) M2 with tr(f2) tr(f1).
InstanceResult check_composite(const BimodulePtr& q1, const BimodulePtr& q2, const BimodulePtr& q3, const Matrix& f1,
                               const Matrix& f2, const DualPair& pair1, const DualPair& pair2, std::uint64_t seed = 0);
// Identity twists: chi(M1 (.) M2) against chi(M2) chi(M1).
InstanceResult check_composite_euler(const BimodulePtr& m1, const BimodulePtr& m2, std::uint64_t seed = 0);
TheoremReport check_composite_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                     std::size_t max_dim = 3);

// twisted_trace(phi) against left_twisted_trace(mate(phi)).
InstanceResult check_mate(const BimodulePtr& p, const BimodulePtr& q, const Matrix& phi, const DualPair& pair,
                          std::uint64_t seed = 0);
TheoremReport check_mate_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                std::size_t max_dim = 4);

// Finite groups and their representations, for character checks.
using GroupTable = std::vector<std::vector<std::size_t>>;

// (k[G], k)-bimodule from representation matrices rho[g].
BimodulePtr representation_bimodule(const AlgebraPtr& kg, const std::vector<Matrix>& rho);
// Value of chi(V) : <k[G]> -> k on the class of each group element.
std::vector<Scalar> character_of(const BimodulePtr& v);

enum class CharacterConvention { g, g_inverse };
std::string convention_name(CharacterConvention c);
// Decided on a faithful one-dimensional representation of C_3 over F_7.
CharacterConvention character_convention();

// Ind_H^G(V) for H given by element indices of G, V by matrices indexed like h. Skipped when
// the characteristic divides |G|.
TheoremReport check_induction(const Field& f, const GroupTable& g, const std::vector<std::size_t>& h,
                               const std::vector<Matrix>& rho);
// Frobenius formula, as used by check_induction's cross-check.
std::vector<Scalar> induced_character(const Field& f, const GroupTable& g, const std::vector<std::size_t>& h,
                                      const std::vector<Scalar>& chi_h);

// graded_euler(M) against tr(chi(M)) on <U_A>.
InstanceResult check_lunts(const BimodulePtr& m, std::size_t n_max = 3, std::uint64_t seed = 0);
TheoremReport check_lunts_seeded(const AlgebraPtr& a, std::uint64_t first_seed, std::size_t seeds,
                                 std::size_t n_max = 3, std::size_t max_dim = 4);

// Seeded M, N and a random map M (.) N -> N (.) M.
struct TwistInstance {
  BimodulePtr M, N;
  Matrix phi;
};
TwistInstance random_twist(const AlgebraPtr& a, std::uint64_t seed, std::size_t max_dim = 4);

}  // namespace morita
