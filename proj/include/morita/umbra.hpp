#pragma once

#include "morita/duality.hpp"
#include "morita/shadow.hpp"
#include "morita/traces.hpp"

#include <map>
#include <memory>

namespace morita {

// Deliberate damage, for checking that the checks can fail.
enum class UmbraCorruption { none, splitting, theta };

// Everything lives over Ae = A (x) A^op. C is A as a (k, Ae)-bimodule with x (a (x) b) = b x a,
// E is A as an (Ae, k)-bimodule with (a (x) b) x = a x b. For M over (A, A), M~ = M (x) U_{A^op}.
//   sh(M)  = (C (.) M~) (.) E        csh(M) = (C (.) M~) (.) C'
//   esh(M) = (E' (.) M~) (.) E       dsh(M) = (E' (.) M~) (.) C'
// where C' is the right dual of C and E' the right dual of E.
// Maps into or out of a tensor of two values use the Kronecker basis.
struct UmbraData {
  AlgebraPtr A, Aop, Ae;
  DualizabilityWitness witness;
  BimodulePtr C, E;
  DualPair C_pair, E_pair;
  Matrix iunit;  // k -> csh(U_A)
  Matrix ounit;  // esh(U_A) -> k
  UmbraCorruption corruption = UmbraCorruption::none;

  struct Cache;
  std::shared_ptr<Cache> cache;

  BimodulePtr tilde(const BimodulePtr& m) const;

  BimodulePtr sh(const BimodulePtr& m) const;
  BimodulePtr csh(const BimodulePtr& m) const;
  BimodulePtr esh(const BimodulePtr& m) const;
  BimodulePtr dsh(const BimodulePtr& m) const;

  // Functors on a bimodule map f: m -> m2.
  Matrix sh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const;
  Matrix csh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const;
  Matrix esh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const;
  Matrix dsh_map(const BimodulePtr& m, const BimodulePtr& m2, const Matrix& f) const;

  Matrix rspl(const BimodulePtr& m, const BimodulePtr& n) const;   // dsh(M) x csh(N) -> dsh(M N)
  Matrix luspl(const BimodulePtr& m, const BimodulePtr& n) const;  // dsh(M N) -> esh(M) x dsh(N)
  Matrix uspl(const BimodulePtr& m, const BimodulePtr& n) const;   // dsh(M) x sh(N) -> esh(M N)
  Matrix spl(const BimodulePtr& m, const BimodulePtr& n) const;    // csh(M N) -> sh(M) x dsh(N)
  Matrix lspl(const BimodulePtr& m, const BimodulePtr& n) const;   // csh(M) x sh(N) -> sh(M N)
  Matrix ruspl(const BimodulePtr& m, const BimodulePtr& n) const;  // sh(M N) -> sh(M) x esh(N)

  // Natural isomorphisms to <M> and the shadow isomorphisms they carry over.
  Matrix sh_to_hh0(const BimodulePtr& m) const;
  Matrix dsh_to_hh0(const BimodulePtr& m) const;
  Matrix theta_sh(const BimodulePtr& m, const BimodulePtr& n) const;   // sh(M N) -> sh(N M)
  Matrix theta_dsh(const BimodulePtr& m, const BimodulePtr& n) const;  // dsh(M N) -> dsh(N M)
};

// Throws ScopeRefusal unless A is separable.
UmbraData build_umbra(const AlgebraPtr& a);

// The symmetry X (x) Y -> Y (x) X in Kronecker coordinates.
Matrix swap_factors(const Field& f, std::size_t dx, std::size_t dy);

// The eight squares of a penumbra plus naturality of spl and uspl.
TheoremReport check_penumbra_axioms(const UmbraData& u, const BimodulePtr& m, const BimodulePtr& n,
                                    const BimodulePtr& p, std::uint64_t seed = 0);
// Both routes csh((M N) P) -> esh((P N) M) through the shadow isomorphisms and the symmetry.
TheoremReport check_umbra_square(const UmbraData& u, const BimodulePtr& m, const BimodulePtr& n,
                                 const BimodulePtr& p, std::uint64_t seed = 0);
// For a dual pair (N, M) = (pair.M, pair.N): (sh(N), dsh(M)) is a dual pair of vector spaces.
TheoremReport check_penumbra_dual(const UmbraData& u, const DualPair& pair, std::uint64_t seed = 0);

// Seeded triples: penumbra squares, umbra square and the dual lemma on each.
TheoremReport check_umbra_seeded(const UmbraData& u, std::uint64_t first_seed, std::size_t seeds,
                                 std::size_t max_dim = 4);

}  // namespace morita
