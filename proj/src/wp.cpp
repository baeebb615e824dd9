#include "nrb/wp.hpp"

#include "nrb/errors.hpp"
#include "nrb/scope.hpp"

namespace nrb {

namespace {

struct Wp {
  const StateSpace& space;
  const SubMap& subs;
  std::set<Colour> universe;

  StateSet sat(const BoolPtr& b) { return satisfying_states(b, space); }

  StateSet all() {
    StateSet out;
    for (State s : space.all_states()) out.insert(s);
    return out;
  }

  ColourDecomposition with(ColourDecomposition c, const Colour& col,
                           BoolPtr comp) {
    c.per_colour[col] = std::move(comp);
    return c;
  }

  StateSet run(const StmtPtr& stmt, const ColourDecomposition& q,
               const GotoEnv& g) {
    return std::visit([&](const auto& n) { return clause(n, q, g); },
                      stmt->node);
  }

  StateSet clause(const Stmt::Skip&, const ColourDecomposition& q,
                  const GotoEnv&) {
    return sat(q.at(Colour::N()));
  }
  StateSet clause(const Stmt::Return&, const ColourDecomposition& q,
                  const GotoEnv&) {
    return sat(q.at(Colour::R()));
  }
  StateSet clause(const Stmt::Break&, const ColourDecomposition& q,
                  const GotoEnv&) {
    return sat(q.at(Colour::B()));
  }
  StateSet clause(const Stmt::Goto& n, const ColourDecomposition& q,
                  const GotoEnv&) {
    return sat(q.at(Colour::G(n.label)));
  }
  StateSet clause(const Stmt::Throw& n, const ColourDecomposition& q,
                  const GotoEnv&) {
    return sat(q.at(Colour::E(n.kind)));
  }

  StateSet clause(const Stmt::Assign& n, const ColourDecomposition& q,
                  const GotoEnv&) {
    // wp(x=e, N q) = q[e/x], evaluated over the domain.
    return sat(substitute(q.at(Colour::N()), n.var, n.value));
  }

  StateSet clause(const Stmt::Seq& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    // The continuation is folded into the N-component; abnormal exits of
    // the first statement answer to q directly.
    BoolPtr mid = render(run(n.second, q, g), space);
    return run(n.first, with(q, Colour::N(), mid), g);
  }

  StateSet clause(const Stmt::Guard& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    StateSet out = sat(b_not(n.cond));
    StateSet body = run(n.body, q, g);
    out.insert(body.begin(), body.end());
    return out;
  }

  StateSet clause(const Stmt::Choice& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    StateSet l = run(n.left, q, g);
    StateSet r = run(n.right, q, g);
    StateSet out;
    for (State s : l)
      if (r.count(s)) out.insert(s);
    return out;
  }

  StateSet clause(const Stmt::Do& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    // Greatest fixpoint from the full space: divergent states stay in.
    // Body break-exits answer to the loop's N-component; body N-exits
    // re-enter the current candidate.
    ColourDecomposition body_q = with(q, Colour::B(), q.at(Colour::N()));
    StateSet w = all();
    while (true) {
      StateSet next =
          run(n.body, with(body_q, Colour::N(), render(w, space)), g);
      if (next == w) return w;
      w = std::move(next);
    }
  }

  StateSet clause(const Stmt::Labelled& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    // Sound only when every assumed goto entry satisfies the N-component.
    StateSet nset = sat(q.at(Colour::N()));
    auto it = g.find(n.label);
    if (it != g.end())
      for (State s : it->second)
        if (!nset.count(s)) return {};
    return run(n.body, q, g);
  }

  StateSet clause(const Stmt::LabelDecl& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    StateSet gl = label_fixpoint(n.label, n.body, g, space, subs);
    GotoEnv g2 = g;
    g2[n.label] = gl;
    // G_l exits of the body are subtracted from the model, so they impose
    // no requirement.
    return run(n.body, with(q, Colour::G(n.label), b_true()), g2);
  }

  StateSet clause(const Stmt::Call& n, const ColourDecomposition& q,
                  const GotoEnv&) {
    auto body = subs.find(n.sub);
    if (body == subs.end()) throw NrbError("undefined subroutine: " + n.sub);
    // The body's R-exits surface as the call's N-exits; E passes through;
    // N/B/G exits of the body are dropped by the model.
    ColourDecomposition body_q = q;
    body_q.per_colour[Colour::R()] = q.at(Colour::N());
    for (const Colour& c : universe)
      if (c.kind == Colour::Kind::N || c.kind == Colour::Kind::B ||
          c.kind == Colour::Kind::G)
        body_q.per_colour[c] = b_true();
    return run(body->second, body_q, GotoEnv{});
  }

  StateSet clause(const Stmt::TryCatch& n, const ColourDecomposition& q,
                  const GotoEnv& g) {
    BoolPtr handler_wp = render(run(n.handler, q, g), space);
    return run(n.body, with(q, Colour::E(n.kind), handler_wp), g);
  }
};

}  // namespace

BoolPtr render(const StateSet& states, const StateSpace& space) {
  if (states.empty()) return b_false();
  if (static_cast<long long>(states.size()) == space.state_count())
    return b_true();
  BoolPtr out;
  for (State s : states) {
    BoolPtr conj;
    for (int i = 0; i < space.var_count(); ++i) {
      BoolPtr eq =
          b_rel(t_var(space.var(i).name), RelOp::Eq, t_int(space.value(s, i)));
      conj = conj ? b_and(conj, eq) : eq;
    }
    if (!conj) conj = b_true();
    out = out ? b_or(out, conj) : conj;
  }
  return out;
}

std::set<Colour> colour_universe(const StmtPtr& stmt, const SubMap& subs,
                                 const std::set<Colour>& extra) {
  std::set<Colour> u{Colour::N(), Colour::R(), Colour::B()};
  auto add = [&](const StmtPtr& s) {
    for (const std::string& l : mentioned_labels(s)) u.insert(Colour::G(l));
    for (const std::string& k : mentioned_kinds(s)) u.insert(Colour::E(k));
  };
  add(stmt);
  for (const auto& [name, body] : subs) add(body);
  u.insert(extra.begin(), extra.end());
  return u;
}

Predicate wp(const StmtPtr& stmt, const ModalPtr& q, const GotoEnv& g,
             const StateSpace& space, const SubMap& subs) {
  std::set<Colour> extra = colours_of(q);
  for (const auto& [label, states] : g) extra.insert(Colour::G(label));
  Wp engine{space, subs, colour_universe(stmt, subs, extra)};
  ColourDecomposition comps = decompose(q, engine.universe);
  StateSet states = engine.run(stmt, comps, g);
  // Atomic statements have a natural structural rendering; composites fall
  // back to the canonical enumerative form.
  BoolPtr rendering = std::visit(
      [&](const auto& n) -> BoolPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>)
          return comps.at(Colour::N());
        else if constexpr (std::is_same_v<T, Stmt::Return>)
          return comps.at(Colour::R());
        else if constexpr (std::is_same_v<T, Stmt::Break>)
          return comps.at(Colour::B());
        else if constexpr (std::is_same_v<T, Stmt::Goto>)
          return comps.at(Colour::G(n.label));
        else if constexpr (std::is_same_v<T, Stmt::Throw>)
          return comps.at(Colour::E(n.kind));
        else if constexpr (std::is_same_v<T, Stmt::Assign>)
          return substitute(comps.at(Colour::N()), n.var, n.value);
        else
          return render(states, space);
      },
      stmt->node);
  return {states, rendering};
}

bool verify_wp(const StmtPtr& stmt, const ModalPtr& q, const GotoEnv& g,
               const StateSpace& space, const SubMap& subs) {
  Predicate structural = wp(stmt, q, g, space, subs);
  TransitionSet model = interpret(stmt, g, space, subs);
  StateSet brute;
  for (State s : space.all_states()) brute.insert(s);
  for (const Transition& t : model)
    if (!eval_modal(q, t, space)) brute.erase(t.from);
  return brute == structural.states;
}

}  // namespace nrb
