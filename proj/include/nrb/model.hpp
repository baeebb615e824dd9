#pragma once

#include <map>
#include <string>
#include <vector>

#include "nrb/ast.hpp"
#include "nrb/eval.hpp"
#include "nrb/transition.hpp"

namespace nrb {

// Hypothesised sets of states fed in at each label via goto.
using GotoEnv = std::map<std::string, StateSet>;
using SubMap = std::map<std::string, StmtPtr>;

struct Verdict {
  bool holds = true;
  std::vector<Transition> counterexamples;
};

// The coloured-transition model of a statement under goto assumptions g.
// Labels absent from g read as "no states". Throws DomainNotClosedError if
// an assignment that stores an out-of-range value survives to the result.
TransitionSet interpret(const StmtPtr& stmt, const GotoEnv& g,
                        const StateSpace& space, const SubMap& subs);

// Least fixpoint of the goto-output map for label l over the body,
// computed by Kleene iteration from the empty set.
StateSet label_fixpoint(const std::string& l, const StmtPtr& body,
                        const GotoEnv& g, const StateSpace& space,
                        const SubMap& subs);

// Every transition from a pre-satisfying state must satisfy the post.
// The goto environment is taken from the judgement's assumptions.
Verdict check_triple(const Judgement& j, const StateSpace& space,
                     const SubMap& subs);

// True iff every initial state has at most one outgoing transition.
bool determinism_check(const StmtPtr& stmt, const GotoEnv& g,
                       const StateSpace& space, const SubMap& subs);

// "x=0, y=1" rendering of a state's bindings.
std::string state_label(const StateSpace& space, State s);

// Graphviz export: one node per state, one edge per transition.
std::string to_dot(const TransitionSet& ts, const StateSpace& space);

}  // namespace nrb
