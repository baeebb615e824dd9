#pragma once

#include <compare>
#include <set>

#include "nrb/ast.hpp"
#include "nrb/eval.hpp"

namespace nrb {

// One coloured transition: how a fragment run from `from` left off in `to`.
struct Transition {
  State from;
  Colour colour;
  State to;

  friend bool operator==(const Transition&, const Transition&) = default;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

using TransitionSet = std::set<Transition>;

}  // namespace nrb
