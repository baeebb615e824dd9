#include "nrb/modal.hpp"

namespace nrb {

bool eval_modal(const ModalPtr& q, const Transition& t,
                const StateSpace& space) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
          return eval_bool(n.prop, space, t.to);
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          return t.colour == n.colour && eval_modal(n.body, t, space);
        } else if constexpr (std::is_same_v<T, ModalFormula::Or>) {
          return eval_modal(n.left, t, space) || eval_modal(n.right, t, space);
        } else if constexpr (std::is_same_v<T, ModalFormula::And>) {
          return eval_modal(n.left, t, space) && eval_modal(n.right, t, space);
        } else {
          return !eval_modal(n.arg, t, space);
        }
      },
      q->node);
}

BoolPtr ColourDecomposition::at(const Colour& c) const {
  auto it = per_colour.find(c);
  return it == per_colour.end() ? b_false() : it->second;
}

ColourDecomposition decompose(const ModalPtr& q,
                              const std::set<Colour>& colours) {
  ColourDecomposition d;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
          // The colour split is exhaustive, so a plain proposition
          // contributes itself under every colour.
          for (const Colour& c : colours) d.per_colour[c] = n.prop;
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          ColourDecomposition inner = decompose(n.body, colours);
          for (const Colour& c : colours)
            d.per_colour[c] = c == n.colour ? inner.at(c) : b_false();
        } else if constexpr (std::is_same_v<T, ModalFormula::Or>) {
          ColourDecomposition l = decompose(n.left, colours);
          ColourDecomposition r = decompose(n.right, colours);
          for (const Colour& c : colours)
            d.per_colour[c] = b_or(l.at(c), r.at(c));
        } else if constexpr (std::is_same_v<T, ModalFormula::And>) {
          ColourDecomposition l = decompose(n.left, colours);
          ColourDecomposition r = decompose(n.right, colours);
          for (const Colour& c : colours)
            d.per_colour[c] = b_and(l.at(c), r.at(c));
        } else {
          // A transition has exactly one colour, so negation acts on the
          // matching component alone.
          ColourDecomposition inner = decompose(n.arg, colours);
          for (const Colour& c : colours)
            d.per_colour[c] = b_not(inner.at(c));
        }
      },
      q->node);
  return d;
}

ModalPtr recompose(const ColourDecomposition& d) {
  ModalPtr out;
  for (const auto& [c, comp] : d.per_colour) {
    ModalPtr part = m_modal(c, m_base(comp));
    out = out ? m_or(out, part) : part;
  }
  return out ? out : m_base(b_false());
}

std::set<Colour> colours_of(const ModalPtr& q) {
  std::set<Colour> out;
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          out.insert(n.colour);
          out.merge(colours_of(n.body));
        } else if constexpr (std::is_same_v<T, ModalFormula::Or> ||
                             std::is_same_v<T, ModalFormula::And>) {
          out = colours_of(n.left);
          out.merge(colours_of(n.right));
        } else {
          out = colours_of(n.arg);
        }
      },
      q->node);
  return out;
}

bool implies(const BoolPtr& p, const BoolPtr& q, const StateSpace& space) {
  for (State s : space.all_states())
    if (eval_bool(p, space, s) && !eval_bool(q, space, s)) return false;
  return true;
}

bool equivalent(const BoolPtr& p, const BoolPtr& q, const StateSpace& space) {
  return implies(p, q, space) && implies(q, p, space);
}

bool modal_implies(const ModalPtr& q, const ModalPtr& q2,
                   const std::set<Colour>& colours, const StateSpace& space) {
  ColourDecomposition a = decompose(q, colours);
  ColourDecomposition b = decompose(q2, colours);
  for (const Colour& c : colours)
    if (!implies(a.at(c), b.at(c), space)) return false;
  return true;
}

}  // namespace nrb
