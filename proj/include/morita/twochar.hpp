#pragma once

#include "morita/traces.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace morita {

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A_alpha: the regular bimodule with right action m . a = m alpha(a).
BimodulePtr twisted_bimodule(const AlgebraPtr& a, const Matrix& alpha);

// A group acting on A by unital automorphisms, alpha[g] alpha[h] = alpha[gh].
class GroupAction {
 public:
  GroupAction(GroupTable group, AlgebraPtr a, std::vector<Matrix> alpha, std::string name = "");

  const GroupTable& group() const { return group_; }
  const AlgebraPtr& algebra() const { return A_; }
  const Matrix& alpha(std::size_t g) const { return alpha_[g]; }
  const std::string& name() const { return name_; }
  std::size_t order() const { return group_.size(); }
  std::size_t identity() const { return e_; }
  std::size_t mult(std::size_t g, std::size_t h) const { return group_[g][h]; }
  std::size_t inverse(std::size_t g) const;
  bool commute(std::size_t g, std::size_t h) const { return mult(g, h) == mult(h, g); }

  // A_{alpha_g}, built once per element.
  const BimodulePtr& bimodule(std::size_t g) const { return bimods_[g]; }
  // A_g (.) A_h -> A_gh, x (x) y -> x alpha_g(y).
  Matrix compose(std::size_t g, std::size_t h) const;

 private:
  GroupTable group_;
  AlgebraPtr A_;
  std::vector<Matrix> alpha_;
  std::string name_;
  std::size_t e_ = 0;
  std::vector<BimodulePtr> bimods_;
};
using GroupActionPtr = std::shared_ptr<const GroupAction>;

// G acting on k^G by permuting coordinates, e_x -> e_{gx}.
GroupActionPtr regular_permutation_action(const Field& f, const GroupTable& g, std::string name = "");
// G acting on k^n through a homomorphism into permutations of n points: perms[g][x] = g.x.
GroupActionPtr permutation_action(const Field& f, const GroupTable& g, const std::vector<std::vector<std::size_t>>& perms,
                                  std::string name = "");
GroupActionPtr trivial_action(const AlgebraPtr& a, const GroupTable& g, std::string name = "");

// phi: X (.) Y -> Y (.) X over (A, A). g and h record which group elements X and Y come from,
// up to canonical isomorphism.
struct SquareCell {
  GroupActionPtr action;
  std::size_t g = 0, h = 0;
  BimodulePtr X, Y;
  Matrix phi;
};

// A_g (.) A_h -> A_gh = A_hg -> A_h (.) A_g. Throws ActionError unless gh = hg.
SquareCell square_cell(const GroupActionPtr& action, std::size_t g, std::size_t h);

// Iterated trace of the cell in the given order.
Scalar cell_trace(const SquareCell& cell, TraceOrder order);
// Both orders; throws std::logic_error if they disagree.
Scalar two_character(const SquareCell& cell);

// T: X' = X (.) Y, phi' = a o (phi (.) 1) : (X (.) Y) (.) Y -> Y (.) (X (.) Y). (g,h) -> (gh,h).
SquareCell act_T(const SquareCell& cell);
// S: X' = Y, Y' = the right dual X* of X, phi' : Y (.) X* -> X* (.) Y obtained by bending X
// through the inverse unit and counit. (g,h) -> (h,g^-1).
SquareCell act_S(const SquareCell& cell);

// phi invertible, shapes consistent, X, Y invertible and of the recorded group elements.
bool cell_is_valid(const SquareCell& cell);

struct CharacterEntry {
  std::size_t g, h;
  Scalar value;
};
// Every commuting pair, in (g, h) order.
std::vector<CharacterEntry> character_table(const GroupActionPtr& action);

// For every commuting pair: S, T, S^4 and random S/T words of length at most max_len.
TheoremReport check_modular_invariance(const GroupActionPtr& action, std::uint64_t seed = 1, std::size_t words = 20,
                                       std::size_t max_len = 6);

// The two pasting identities for a double shadow, on every admissible triple of group elements.
TheoremReport check_double_shadow(const GroupActionPtr& action);

}  // namespace morita
