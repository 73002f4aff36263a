#pragma once

#include "morita/bimodule.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace morita {

// <M> = M / span{a m - m a}.
struct ShadowSpace {
  BimodulePtr source;
  std::size_t dim = 0;
  Matrix projection;  // dim x source.dim
  Matrix section;     // source.dim x dim
};
using ShadowPtr = std::shared_ptr<const ShadowSpace>;

// Memoized per bimodule.
ShadowPtr hh0(const BimodulePtr& m);
void clear_shadow_cache();

// <f> : <src> -> <dst> for a bimodule map f.
Matrix shadow_map(const BimodulePtr& src, const BimodulePtr& dst, const Matrix& f);

// <M (.) N> -> <N (.) M> induced by m (x) n -> n (x) m.
Matrix shadow_theta(const BimodulePtr& m, const BimodulePtr& n);
// Whether m (x) n -> n (x) m kills the relations defining <M (.) N>.
bool theta_well_defined(const BimodulePtr& m, const BimodulePtr& n);

class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest chain space the Hochschild engine will build; MORITA_CHAIN_CAP overrides 20000.
std::size_t chain_cap();

struct SparseColumn {
  std::vector<std::pair<std::size_t, Scalar>> entries;
};

struct HochschildComplex {
  BimodulePtr coefficients;
  std::size_t n_max = 0;
  std::vector<std::size_t> chain_dims;       // C_0 .. C_{n_max}
  std::vector<std::vector<SparseColumn>> d;  // d[n] : C_n -> C_{n-1}, n = 1 .. n_max (d[0] empty)
  std::vector<std::size_t> ranks;            // ranks[n] = rank d_n, ranks[0] = 0
  std::vector<bool> rank_exact;              // false when only a lower bound is known
  std::vector<bool> d_squared_zero;          // index n: d_{n} d_{n+1} = 0, n = 1 .. n_max-1
  std::vector<std::size_t> homology;         // HH_0 .. HH_{n_max-1}
  std::vector<bool> homology_exact;          // otherwise an upper bound
  bool all_d_squared_zero() const;
  bool all_exact() const;
};

// Standard complex M (x) A^{(x)n} with the last face wrapping around to act on M from the left.
HochschildComplex hochschild(const BimodulePtr& m, std::size_t n_max, std::size_t cap = chain_cap());

struct GradedEuler {
  long value = 0;
  bool stabilized = false;  // last two computed dims vanish
  std::vector<std::size_t> dims;
};
GradedEuler graded_euler(const BimodulePtr& m, std::size_t n_max);

// Rank of a sparse matrix with the given number of rows, modulo p. Exact when the field is F_p.
std::size_t sparse_rank_mod(const std::vector<SparseColumn>& cols, std::size_t rows, std::uint64_t p);

}  // namespace morita
