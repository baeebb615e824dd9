#pragma once

#include "nrb/ast.hpp"
#include "nrb/eval.hpp"
#include "nrb/modal.hpp"
#include "nrb/model.hpp"

namespace nrb {

// A state set together with its canonical syntactic witness.
struct Predicate {
  StateSet states;
  BoolPtr rendering;
};

// Canonical enumerative DNF: empty set is false, the full space is true,
// otherwise one conjunction of variable equalities per state, disjoined in
// enumeration order.
BoolPtr render(const StateSet& states, const StateSpace& space);

// The colour universe a statement can touch: N, R, B, every label and
// exception kind mentioned in it or in the subroutine bodies, plus extras.
std::set<Colour> colour_universe(const StmtPtr& stmt, const SubMap& subs,
                                 const std::set<Colour>& extra);

// Weakest precondition: the largest set of initial states from which every
// transition of stmt under g satisfies q (divergent states included).
Predicate wp(const StmtPtr& stmt, const ModalPtr& q, const GotoEnv& g,
             const StateSpace& space, const SubMap& subs);

// Structural wp against the brute-force semantic definition.
bool verify_wp(const StmtPtr& stmt, const ModalPtr& q, const GotoEnv& g,
               const StateSpace& space, const SubMap& subs);

}  // namespace nrb
