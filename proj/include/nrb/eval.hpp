#ifndef NRB_EVAL_HPP
#define NRB_EVAL_HPP

#include <optional>
#include <set>
#include <vector>

#include "nrb/ast.hpp"

namespace nrb {

// A state is an index into the lexicographic enumeration of the finite
// state space; a state set is a sorted set of such indices.
using State = int;
using StateSet = std::set<State>;

inline constexpr long long kDefaultStateCap = 1'000'000;

// Per-variable inclusive ranges. Variables are kept in ascending name order
// so that enumeration is lexicographic in variable name, then value.
class StateSpace {
 public:
  explicit StateSpace(std::vector<VarDecl> vars,
                      long long cap = kDefaultStateCap);
  static StateSpace from_program(const Program& p,
                                 long long cap = kDefaultStateCap);

  int var_count() const { return static_cast<int>(vars_.size()); }
  long long state_count() const { return count_; }
  const std::vector<VarDecl>& vars() const { return vars_; }

  std::optional<int> var_index(const std::string& name) const;
  const VarDecl& var(int idx) const { return vars_[idx]; }

  long long value(State s, int var_idx) const;
  // New state with one variable changed, or nullopt if v is out of range.
  std::optional<State> with(State s, int var_idx, long long v) const;

  std::vector<State> all_states() const;

 private:
  std::vector<VarDecl> vars_;
  std::vector<long long> strides_;
  long long count_ = 1;
};

long long eval_term(const TermPtr& e, const StateSpace& space, State s);
bool eval_bool(const BoolPtr& b, const StateSpace& space, State s);

// Capture-avoiding substitution of e for free occurrences of x in b.
BoolPtr substitute(const BoolPtr& b, const std::string& x, const TermPtr& e);
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& e);

std::vector<State> enumerate_states(const StateSpace& space);
StateSet satisfying_states(const BoolPtr& b, const StateSpace& space);

// Incremented whenever an existential is evaluated over a declared range
// rather than all of Z; the CLI surfaces it as a per-run note.
long long exists_evaluations();
void reset_exists_evaluations();

}  // namespace nrb

#endif  // NRB_EVAL_HPP
