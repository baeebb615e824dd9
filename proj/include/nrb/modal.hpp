#pragma once

#include <map>
#include <set>

#include "nrb/ast.hpp"
#include "nrb/eval.hpp"
#include "nrb/transition.hpp"

namespace nrb {

// Evaluate a modal assertion over one transition: base propositions look at
// the final state only; each modal operator additionally pins the colour.
bool eval_modal(const ModalPtr& q, const Transition& t,
                const StateSpace& space);

// The unique rewriting of a formula as one non-modal component per colour.
struct ColourDecomposition {
  std::map<Colour, BoolPtr> per_colour;

  // The component for a colour; absent keys read as false.
  BoolPtr at(const Colour& c) const;
};

// Decompose q over the given colour universe, which must cover every G/E
// colour mentioned in q.
ColourDecomposition decompose(const ModalPtr& q,
                              const std::set<Colour>& colours);

// The disjunction of M[component_M] over the decomposition's colours.
ModalPtr recompose(const ColourDecomposition& d);

// All G/E colours mentioned in a formula.
std::set<Colour> colours_of(const ModalPtr& q);

// Finite-domain implication/equivalence oracle.
bool implies(const BoolPtr& p, const BoolPtr& q, const StateSpace& space);
bool equivalent(const BoolPtr& p, const BoolPtr& q, const StateSpace& space);

// q -> q' on every transition over the colour universe, decided per colour.
bool modal_implies(const ModalPtr& q, const ModalPtr& q2,
                   const std::set<Colour>& colours, const StateSpace& space);

}  // namespace nrb
