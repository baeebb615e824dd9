#include "nrb/model.hpp"

#include <limits>
#include <sstream>

#include "nrb/errors.hpp"
#include "nrb/modal.hpp"

namespace nrb {

namespace {

// Sequential composition: N-exits of a continue into b, everything else
// (including internal stuck markers) passes through unchanged.
TransitionSet compose(const TransitionSet& a, const TransitionSet& b) {
  TransitionSet out;
  for (const Transition& t : a) {
    if (t.colour.kind != Colour::Kind::N) {
      out.insert(t);
      continue;
    }
    auto lo = b.lower_bound(
        {t.to, Colour{Colour::Kind::N, ""}, std::numeric_limits<State>::min()});
    for (auto it = lo; it != b.end() && it->from == t.to; ++it)
      out.insert({t.from, it->colour, it->to});
  }
  return out;
}

struct Interp {
  const StateSpace& space;
  const SubMap& subs;
  std::map<std::string, TransitionSet> sub_memo;

  TransitionSet run(const StmtPtr& stmt, const GotoEnv& g) {
    return std::visit([&](const auto& n) { return clause(n, g); }, stmt->node);
  }

  TransitionSet identities(const Colour& c) {
    TransitionSet out;
    for (State s : space.all_states()) out.insert({s, c, s});
    return out;
  }

  TransitionSet clause(const Stmt::Skip&, const GotoEnv&) {
    return identities(Colour::N());
  }
  TransitionSet clause(const Stmt::Return&, const GotoEnv&) {
    return identities(Colour::R());
  }
  TransitionSet clause(const Stmt::Break&, const GotoEnv&) {
    return identities(Colour::B());
  }
  TransitionSet clause(const Stmt::Goto& n, const GotoEnv&) {
    return identities(Colour::G(n.label));
  }
  TransitionSet clause(const Stmt::Throw& n, const GotoEnv&) {
    return identities(Colour::E(n.kind));
  }

  TransitionSet clause(const Stmt::Seq& n, const GotoEnv& g) {
    return compose(run(n.first, g), run(n.second, g));
  }

  TransitionSet clause(const Stmt::Assign& n, const GotoEnv&) {
    TransitionSet out;
    auto idx = space.var_index(n.var);
    if (!idx) throw UnboundVariableError(n.var);
    for (State s : space.all_states()) {
      long long v = eval_term(n.value, space, s);
      if (auto s1 = space.with(s, *idx, v)) {
        out.insert({s, Colour::N(), *s1});
      } else {
        // Recorded lazily: the error is raised only if the marker survives
        // to a public result (a guard upstream may filter it away).
        out.insert(
            {s, Colour{Colour::Kind::Stuck, n.var + "=" + std::to_string(v)},
             s});
      }
    }
    return out;
  }

  TransitionSet clause(const Stmt::Guard& n, const GotoEnv& g) {
    TransitionSet out;
    for (const Transition& t : run(n.body, g))
      if (eval_bool(n.cond, space, t.from)) out.insert(t);
    return out;
  }

  TransitionSet clause(const Stmt::Choice& n, const GotoEnv& g) {
    TransitionSet out = run(n.left, g);
    TransitionSet r = run(n.right, g);
    out.insert(r.begin(), r.end());
    return out;
  }

  TransitionSet clause(const Stmt::Do& n, const GotoEnv& g) {
    TransitionSet body = run(n.body, g);
    // Base: break-exits of the body end the loop normally; other abnormal
    // exits pass through. N-exits re-enter, giving the least fixpoint.
    TransitionSet base;
    TransitionSet n_exits;
    for (const Transition& t : body) {
      if (t.colour.kind == Colour::Kind::B)
        base.insert({t.from, Colour::N(), t.to});
      else if (t.colour.kind == Colour::Kind::N)
        n_exits.insert(t);
      else
        base.insert(t);
    }
    TransitionSet fix;
    while (true) {
      TransitionSet next = base;
      TransitionSet chained = compose(n_exits, fix);
      next.insert(chained.begin(), chained.end());
      if (next == fix) return fix;
      fix = std::move(next);
    }
  }

  TransitionSet clause(const Stmt::Labelled& n, const GotoEnv& g) {
    TransitionSet out = run(n.body, g);
    auto it = g.find(n.label);
    if (it != g.end())
      for (State s0 : space.all_states())
        for (State s1 : it->second) out.insert({s0, Colour::N(), s1});
    return out;
  }

  StateSet goto_targets(const TransitionSet& ts, const std::string& l) {
    StateSet out;
    for (const Transition& t : ts)
      if (t.colour == Colour::G(l)) out.insert(t.to);
    return out;
  }

  StateSet fixpoint(const std::string& l, const StmtPtr& body,
                    const GotoEnv& g) {
    StateSet gl;
    while (true) {
      GotoEnv g2 = g;
      g2[l] = gl;
      StateSet next = goto_targets(run(body, g2), l);
      if (next == gl) return gl;
      gl = std::move(next);
    }
  }

  TransitionSet clause(const Stmt::LabelDecl& n, const GotoEnv& g) {
    StateSet gl = fixpoint(n.label, n.body, g);
    GotoEnv g2 = g;
    g2[n.label] = gl;
    TransitionSet out;
    for (const Transition& t : run(n.body, g2))
      if (t.colour != Colour::G(n.label)) out.insert(t);
    return out;
  }

  TransitionSet clause(const Stmt::Call& n, const GotoEnv&) {
    auto memo = sub_memo.find(n.sub);
    if (memo == sub_memo.end()) {
      auto body = subs.find(n.sub);
      if (body == subs.end())
        throw NrbError("undefined subroutine: " + n.sub);
      // The body is modelled under the empty goto environment, so the
      // result is caller-independent and safe to memoize.
      memo = sub_memo.emplace(n.sub, run(body->second, GotoEnv{})).first;
    }
    TransitionSet out;
    for (const Transition& t : memo->second) {
      if (t.colour.kind == Colour::Kind::R)
        out.insert({t.from, Colour::N(), t.to});
      else if (t.colour.kind == Colour::Kind::E ||
               t.colour.kind == Colour::Kind::Stuck)
        out.insert(t);
    }
    return out;
  }

  TransitionSet clause(const Stmt::TryCatch& n, const GotoEnv& g) {
    TransitionSet body = run(n.body, g);
    TransitionSet handler = run(n.handler, g);
    Colour caught = Colour::E(n.kind);
    TransitionSet out;
    TransitionSet thrown;
    for (const Transition& t : body) {
      if (t.colour == caught)
        thrown.insert({t.from, Colour::N(), t.to});
      else
        out.insert(t);
    }
    TransitionSet handled = compose(thrown, handler);
    out.insert(handled.begin(), handled.end());
    return out;
  }
};

void throw_if_stuck(const TransitionSet& ts) {
  for (const Transition& t : ts) {
    if (t.colour.kind != Colour::Kind::Stuck) continue;
    auto eq = t.colour.tag.find('=');
    throw DomainNotClosedError(t.colour.tag.substr(0, eq),
                               std::stoll(t.colour.tag.substr(eq + 1)));
  }
}

}  // namespace

TransitionSet interpret(const StmtPtr& stmt, const GotoEnv& g,
                        const StateSpace& space, const SubMap& subs) {
  Interp in{space, subs, {}};
  TransitionSet out = in.run(stmt, g);
  throw_if_stuck(out);
  return out;
}

StateSet label_fixpoint(const std::string& l, const StmtPtr& body,
                        const GotoEnv& g, const StateSpace& space,
                        const SubMap& subs) {
  Interp in{space, subs, {}};
  return in.fixpoint(l, body, g);
}

Verdict check_triple(const Judgement& j, const StateSpace& space,
                     const SubMap& subs) {
  GotoEnv g;
  for (const auto& [label, formula] : j.assumptions)
    g[label] = satisfying_states(formula, space);
  TransitionSet model = interpret(j.stmt, g, space, subs);
  Verdict v;
  for (const Transition& t : model) {
    if (!eval_bool(j.pre, space, t.from)) continue;
    if (!eval_modal(j.post, t, space)) {
      v.holds = false;
      v.counterexamples.push_back(t);
    }
  }
  return v;
}

bool determinism_check(const StmtPtr& stmt, const GotoEnv& g,
                       const StateSpace& space, const SubMap& subs) {
  TransitionSet model = interpret(stmt, g, space, subs);
  State last_from = -1;
  bool seen = false;
  for (const Transition& t : model) {
    if (seen && t.from == last_from) return false;
    last_from = t.from;
    seen = true;
  }
  return true;
}

std::string state_label(const StateSpace& space, State s) {
  std::string out;
  for (int i = 0; i < space.var_count(); ++i) {
    if (i) out += ", ";
    out += space.var(i).name + "=" + std::to_string(space.value(s, i));
  }
  return out;
}

std::string to_dot(const TransitionSet& ts, const StateSpace& space) {
  std::ostringstream os;
  os << "digraph model {\n";
  for (State s : space.all_states())
    os << "  s" << s << " [label=\"" << state_label(space, s) << "\"];\n";
  for (const Transition& t : ts) {
    std::string c;
    switch (t.colour.kind) {
      case Colour::Kind::N: c = "N"; break;
      case Colour::Kind::R: c = "R"; break;
      case Colour::Kind::B: c = "B"; break;
      case Colour::Kind::G: c = "G:" + t.colour.tag; break;
      case Colour::Kind::E: c = "E:" + t.colour.tag; break;
      case Colour::Kind::Stuck: c = "stuck"; break;
    }
    os << "  s" << t.from << " -> s" << t.to << " [label=\"" << c << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace nrb
