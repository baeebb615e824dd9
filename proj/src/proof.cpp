#include "nrb/proof.hpp"

#include "nrb/scope.hpp"

#include "json.hpp"

#include "nrb/modal.hpp"
#include "nrb/parser.hpp"
#include "nrb/printer.hpp"
#include "nrb/wp.hpp"

namespace nrb {

namespace {

const char* kRuleNames[] = {"seq",   "do",  "skp", "ret",   "brk",
                            "go",    "throw", "let", "grd",   "dsj",
                            "frm",   "lbl", "sub", "try",   "preOr",
                            "postAnd", "assumeOr", "conseq"};

}  // namespace

std::string rule_name(RuleName r) {
  return kRuleNames[static_cast<int>(r)];
}

RuleName rule_from_name(const std::string& name) {
  for (int i = 0; i < 18; ++i)
    if (name == kRuleNames[i]) return static_cast<RuleName>(i);
  throw NrbError("unknown rule name: " + name);
}

namespace {

BoolPtr env_at(const GotoAssumptions& env, const std::string& l) {
  auto it = env.find(l);
  return it == env.end() ? b_false() : it->second;
}

// One rule-check run: collects diagnostics against the node's schema.
struct RuleCheck {
  const ProofNode& node;
  const StateSpace& space;
  const SubMap& subs;
  const KernelOptions& opts;
  std::vector<ProofDiagnostic> out;
  std::set<Colour> U;

  void diag(const std::string& code, const std::string& msg) {
    out.push_back({code, rule_name(node.rule) + ": " + msg});
  }

  const Judgement& concl() const { return node.conclusion; }
  const Judgement& prem(size_t i) const { return node.premises[i].conclusion; }

  bool arity(size_t n) {
    if (node.premises.size() == n) return true;
    diag("ArityMismatch", "expected " + std::to_string(n) + " premises, got " +
                              std::to_string(node.premises.size()));
    return false;
  }

  void build_universe() {
    std::set<Colour> extra = colours_of(concl().post);
    for (const auto& [l, b] : concl().assumptions) extra.insert(Colour::G(l));
    for (const ProofNode& p : node.premises) {
      extra.merge(colours_of(p.conclusion.post));
      for (const auto& [l, b] : p.conclusion.assumptions)
        extra.insert(Colour::G(l));
      if (p.conclusion.stmt) {
        std::set<Colour> pc =
            colour_universe(p.conclusion.stmt, SubMap{}, {});
        extra.merge(pc);
      }
    }
    U = colour_universe(concl().stmt, subs, extra);
  }

  ColourDecomposition post(const Judgement& j) { return decompose(j.post, U); }

  bool eqv(const BoolPtr& a, const BoolPtr& b) {
    return equivalent(a, b, space);
  }

  void want_equiv(const BoolPtr& a, const BoolPtr& b, const std::string& what) {
    if (!eqv(a, b))
      diag("ComponentMismatch", what + ": '" + to_string(a) +
                                    "' is not equivalent to '" + to_string(b) +
                                    "'");
  }

  void want_false(const BoolPtr& a, const std::string& what) {
    if (!eqv(a, b_false()))
      diag("ComponentMismatch", what + ": '" + to_string(a) + "' must be false");
  }

  void side(const BoolPtr& lhs, const BoolPtr& rhs, const std::string& what) {
    if (!implies(lhs, rhs, space))
      diag("SideConditionFailed", what + ": '" + to_string(lhs) +
                                      "' does not imply '" + to_string(rhs) +
                                      "'");
  }

  void want_same_stmt(const StmtPtr& a, const StmtPtr& b,
                      const std::string& what) {
    if (!a || !b || !equal(a, b))
      diag("StatementMismatch", what);
  }

  void want_same_env(const GotoAssumptions& a, const GotoAssumptions& b,
                     const std::string& what) {
    std::set<std::string> labels;
    for (const auto& [l, x] : a) labels.insert(l);
    for (const auto& [l, x] : b) labels.insert(l);
    for (const std::string& l : labels)
      if (!eqv(env_at(a, l), env_at(b, l)))
        diag("AssumptionMismatch", what + ": assumption for label " + l);
  }

  // Premise i must share the conclusion's env, and optionally pre/post.
  void plain_premise(size_t i, bool same_pre, bool same_post) {
    want_same_env(prem(i).assumptions, concl().assumptions,
                  "premise " + std::to_string(i + 1));
    if (same_pre)
      want_equiv(prem(i).pre, concl().pre,
                 "premise " + std::to_string(i + 1) + " precondition");
    if (same_post) {
      ColourDecomposition p = post(prem(i)), c = post(concl());
      for (const Colour& col : U)
        want_equiv(p.at(col), c.at(col),
                   "premise " + std::to_string(i + 1) + " postcondition (" +
                       to_string(col) + " component)");
    }
  }

  template <typename Node>
  const Node* stmt_as(const char* what) {
    const Node* n =
        concl().stmt ? std::get_if<Node>(&concl().stmt->node) : nullptr;
    if (!n) diag("StatementMismatch", std::string("conclusion must be ") + what);
    return n;
  }

  // --- axioms ----------------------------------------------------------

  void axiom(const Colour& c, const char* what) {
    if (!arity(0)) return;
    ColourDecomposition q = post(concl());
    for (const Colour& col : U) {
      if (col == c)
        want_equiv(q.at(col), concl().pre,
                   std::string(what) + " postcondition component");
      else
        want_false(q.at(col), std::string(what) + " postcondition (" +
                                  to_string(col) + " component)");
    }
  }

  void check_skp() {
    if (stmt_as<Stmt::Skip>("skip")) axiom(Colour::N(), "skp");
  }
  void check_ret() {
    if (stmt_as<Stmt::Return>("return")) axiom(Colour::R(), "ret");
  }
  void check_brk() {
    if (stmt_as<Stmt::Break>("break")) axiom(Colour::B(), "brk");
  }
  void check_throw() {
    if (const auto* n = stmt_as<Stmt::Throw>("throw"))
      axiom(Colour::E(n->kind), "throw");
  }
  void check_go() {
    const auto* n = stmt_as<Stmt::Goto>("goto");
    if (!n) return;
    axiom(Colour::G(n->label), "go");
    side(concl().pre, env_at(concl().assumptions, n->label),
         "go requires p -> p_l");
  }
  void check_let() {
    const auto* n = stmt_as<Stmt::Assign>("an assignment");
    if (!n || !arity(0)) return;
    ColourDecomposition q = post(concl());
    for (const Colour& col : U) {
      if (col == Colour::N())
        want_equiv(substitute(q.at(col), n->var, n->value), concl().pre,
                   "let precondition must be q[e/x]");
      else
        want_false(q.at(col),
                   "let postcondition (" + to_string(col) + " component)");
    }
  }

  // --- structural rules ------------------------------------------------

  void check_seq() {
    const auto* n = stmt_as<Stmt::Seq>("a sequence");
    if (!n || !arity(2)) return;
    want_same_stmt(prem(0).stmt, n->first, "premise 1 must cover P");
    want_same_stmt(prem(1).stmt, n->second, "premise 2 must cover Q");
    plain_premise(0, true, false);
    plain_premise(1, false, false);
    ColourDecomposition p1 = post(prem(0)), p2 = post(prem(1)),
                        c = post(concl());
    want_equiv(p1.at(Colour::N()), prem(1).pre,
               "premise 1 N-component must be premise 2 precondition");
    want_equiv(p2.at(Colour::N()), c.at(Colour::N()),
               "premise 2 N-component must match the conclusion");
    for (const Colour& col : U) {
      if (col == Colour::N()) continue;
      want_equiv(p1.at(col), c.at(col),
                 "abnormal component (" + to_string(col) + ") of premise 1");
      want_equiv(p2.at(col), c.at(col),
                 "abnormal component (" + to_string(col) + ") of premise 2");
    }
  }

  void check_do() {
    const auto* n = stmt_as<Stmt::Do>("a do loop");
    if (!n || !arity(1)) return;
    want_same_stmt(prem(0).stmt, n->body, "premise must cover the body");
    plain_premise(0, true, false);
    ColourDecomposition p = post(prem(0)), c = post(concl());
    want_equiv(p.at(Colour::B()), c.at(Colour::N()),
               "premise B-component must be the conclusion's N-component");
    want_equiv(p.at(Colour::N()), concl().pre,
               "premise N-component must be the invariant");
    want_false(c.at(Colour::B()), "conclusion B-component");
    for (const Colour& col : U) {
      if (col == Colour::N() || col == Colour::B()) continue;
      want_equiv(p.at(col), c.at(col),
                 "abnormal component (" + to_string(col) + ")");
    }
  }

  void check_grd() {
    const auto* n = stmt_as<Stmt::Guard>("a guarded statement");
    if (!n || !arity(1)) return;
    want_same_stmt(prem(0).stmt, n->body, "premise must cover the body");
    plain_premise(0, false, true);
    want_equiv(prem(0).pre, b_and(n->cond, concl().pre),
               "premise precondition must be q /\\ p");
  }

  void check_dsj() {
    const auto* n = stmt_as<Stmt::Choice>("a choice");
    if (!n || !arity(2)) return;
    want_same_stmt(prem(0).stmt, n->left, "premise 1 must cover P");
    want_same_stmt(prem(1).stmt, n->right, "premise 2 must cover Q");
    plain_premise(0, true, true);
    plain_premise(1, true, true);
  }

  void check_frm() {
    const auto* n = stmt_as<Stmt::Labelled>("a labelled statement");
    if (!n || !arity(1)) return;
    want_same_stmt(prem(0).stmt, n->body, "premise must cover the body");
    plain_premise(0, true, true);
    side(env_at(concl().assumptions, n->label),
         post(concl()).at(Colour::N()), "frm requires N p_l -> q");
  }

  void check_lbl() {
    const auto* n = stmt_as<Stmt::LabelDecl>("a label declaration");
    if (!n || !arity(1)) return;
    want_same_stmt(prem(0).stmt, n->body, "premise must cover the body");
    want_equiv(prem(0).pre, concl().pre, "premise precondition");
    // The premise adds G_l p_l; other assumptions pass unchanged.
    BoolPtr pl = env_at(prem(0).assumptions, n->label);
    GotoAssumptions rest = prem(0).assumptions;
    rest.erase(n->label);
    // An outer assumption for the same name is shadowed by the declaration
    // and plays no part in the rule.
    GotoAssumptions outer = concl().assumptions;
    outer.erase(n->label);
    want_same_env(rest, outer, "premise");
    ColourDecomposition p = post(prem(0)), c = post(concl());
    Colour gl = Colour::G(n->label);
    want_equiv(p.at(gl), pl,
               "premise G_l component must be the assumed p_l");
    want_false(c.at(gl), "conclusion G_l component");
    for (const Colour& col : U) {
      if (col == gl) continue;
      want_equiv(p.at(col), c.at(col),
                 "postcondition component (" + to_string(col) + ")");
    }
  }

  void check_sub() {
    const auto* n = stmt_as<Stmt::Call>("a call");
    if (!n || !arity(1)) return;
    auto body = subs.find(n->sub);
    if (body == subs.end()) {
      diag("StatementMismatch", "unknown subroutine " + n->sub);
      return;
    }
    want_same_stmt(prem(0).stmt, body->second,
                   "premise must cover the subroutine body");
    want_same_env(prem(0).assumptions, GotoAssumptions{},
                  "premise (must assume nothing)");
    want_equiv(prem(0).pre, concl().pre, "premise precondition");
    ColourDecomposition p = post(prem(0)), c = post(concl());
    want_equiv(p.at(Colour::R()), c.at(Colour::N()),
               "premise R-component must be the conclusion's N-component");
    for (const Colour& col : U) {
      if (col == Colour::R()) continue;
      if (col.kind == Colour::Kind::E)
        want_equiv(p.at(col), c.at(col),
                   "exception component (" + to_string(col) + ")");
      else
        want_false(p.at(col),
                   "premise component (" + to_string(col) + ")");
    }
    for (const Colour& col : U)
      if (col.kind != Colour::Kind::N && col.kind != Colour::Kind::E)
        want_false(c.at(col),
                   "conclusion component (" + to_string(col) + ")");
  }

  void check_try() {
    const auto* n = stmt_as<Stmt::TryCatch>("a try/catch");
    if (!n || !arity(2)) return;
    want_same_stmt(prem(0).stmt, n->body, "premise 1 must cover the body");
    want_same_stmt(prem(1).stmt, n->handler,
                   "premise 2 must cover the handler");
    plain_premise(0, true, false);
    plain_premise(1, false, false);
    Colour ek = Colour::E(n->kind);
    ColourDecomposition p1 = post(prem(0)), p2 = post(prem(1)),
                        c = post(concl());
    want_equiv(p1.at(ek), prem(1).pre,
               "premise 1 E_k component must be the handler precondition");
    want_equiv(p2.at(ek), c.at(ek), "premise 2 E_k component");
    for (const Colour& col : U) {
      if (col == ek) continue;
      want_equiv(p1.at(col), c.at(col),
                 "shared component (" + to_string(col) + ") of premise 1");
      want_equiv(p2.at(col), c.at(col),
                 "shared component (" + to_string(col) + ") of premise 2");
    }
  }

  void check_preOr() {
    if (node.premises.empty()) {
      diag("ArityMismatch", "needs at least one premise");
      return;
    }
    BoolPtr disj;
    for (size_t i = 0; i < node.premises.size(); ++i) {
      want_same_stmt(prem(i).stmt, concl().stmt,
                     "premise " + std::to_string(i + 1));
      plain_premise(i, false, true);
      disj = disj ? b_or(disj, prem(i).pre) : prem(i).pre;
    }
    want_equiv(concl().pre, disj,
               "conclusion precondition must be the disjunction");
  }

  void check_postAnd() {
    if (node.premises.empty()) {
      diag("ArityMismatch", "needs at least one premise");
      return;
    }
    ColourDecomposition c = post(concl());
    std::map<Colour, BoolPtr> conj;
    for (size_t i = 0; i < node.premises.size(); ++i) {
      want_same_stmt(prem(i).stmt, concl().stmt,
                     "premise " + std::to_string(i + 1));
      plain_premise(i, true, false);
      ColourDecomposition p = post(prem(i));
      for (const Colour& col : U) {
        auto it = conj.find(col);
        conj[col] = it == conj.end() ? p.at(col) : b_and(it->second, p.at(col));
      }
    }
    for (const Colour& col : U)
      want_equiv(c.at(col), conj[col],
                 "conjoined component (" + to_string(col) + ")");
  }

  void check_assumeOr() {
    if (!arity(1)) return;
    want_same_stmt(prem(0).stmt, concl().stmt, "premise");
    // The per-label disjunction is carried by the judgement's assumption
    // map, so the premise env must already be the pointwise union.
    plain_premise(0, true, true);
  }

  void check_conseq() {
    if (!arity(1)) return;
    want_same_stmt(prem(0).stmt, concl().stmt, "premise");
    side(concl().pre, prem(0).pre, "conseq requires p' -> p");
    ColourDecomposition p = post(prem(0)), c = post(concl());
    for (const Colour& col : U)
      side(p.at(col), c.at(col),
           "conseq requires q -> q' (" + to_string(col) + " component)");
    std::set<std::string> labels;
    for (const auto& [l, b] : prem(0).assumptions) labels.insert(l);
    for (const auto& [l, b] : concl().assumptions) labels.insert(l);
    for (const std::string& l : labels)
      side(env_at(concl().assumptions, l), env_at(prem(0).assumptions, l),
           "conseq requires p_l' -> p_l (label " + l + ")");
    // The label clause binds only the labels still carried in the
    // environment; a discharged label leaves no obligation behind.
    if (!opts.lax_conseq)
      for (const auto& [l, b] : concl().assumptions)
        side(c.at(Colour::G(l)), b,
             "conseq requires G_l q' -> G_l p_l' (label " + l + ")");
  }

  std::vector<ProofDiagnostic> run() {
    if (!concl().stmt) {
      diag("StatementMismatch", "conclusion has no statement");
      return out;
    }
    for (const ProofNode& p : node.premises)
      if (!p.conclusion.stmt) {
        diag("StatementMismatch", "premise has no statement");
        return out;
      }
    build_universe();
    switch (node.rule) {
      case RuleName::Seq: check_seq(); break;
      case RuleName::Do: check_do(); break;
      case RuleName::Skp: check_skp(); break;
      case RuleName::Ret: check_ret(); break;
      case RuleName::Brk: check_brk(); break;
      case RuleName::Go: check_go(); break;
      case RuleName::Throw: check_throw(); break;
      case RuleName::Let: check_let(); break;
      case RuleName::Grd: check_grd(); break;
      case RuleName::Dsj: check_dsj(); break;
      case RuleName::Frm: check_frm(); break;
      case RuleName::Lbl: check_lbl(); break;
      case RuleName::Sub: check_sub(); break;
      case RuleName::Try: check_try(); break;
      case RuleName::PreOr: check_preOr(); break;
      case RuleName::PostAnd: check_postAnd(); break;
      case RuleName::AssumeOr: check_assumeOr(); break;
      case RuleName::Conseq: check_conseq(); break;
    }
    return out;
  }
};

}  // namespace

std::vector<ProofDiagnostic> check_rule(const ProofNode& node,
                                        const StateSpace& space,
                                        const SubMap& subs,
                                        const KernelOptions& opts) {
  RuleCheck rc{node, space, subs, opts};
  return rc.run();
}

namespace {

void check_tree(const ProofNode& node, const StateSpace& space,
                const SubMap& subs, const KernelOptions& opts,
                KernelVerdict& v) {
  std::vector<ProofDiagnostic> ds = check_rule(node, space, subs, opts);
  if (!ds.empty()) {
    v.holds = false;
    v.diagnostics.insert(v.diagnostics.end(), ds.begin(), ds.end());
  }
  for (const ProofNode& p : node.premises)
    check_tree(p, space, subs, opts, v);
}

}  // namespace

KernelVerdict check_proof(const ProofNode& root, const StateSpace& space,
                          const SubMap& subs, const KernelOptions& opts) {
  KernelVerdict v;
  check_tree(root, space, subs, opts, v);
  return v;
}

// --- proof generation -------------------------------------------------------

namespace {

struct Generator {
  const StateSpace& space;
  const SubMap& subs;
  std::set<Colour> U;

  ModalPtr phi(const ColourDecomposition& comps) {
    ModalPtr out;
    for (const Colour& c : U) {
      ModalPtr part = m_modal(c, m_base(comps.at(c)));
      out = out ? m_or(out, part) : part;
    }
    return out ? out : m_base(b_false());
  }

  ColourDecomposition with(ColourDecomposition c, const Colour& col,
                           BoolPtr comp) {
    c.per_colour[col] = std::move(comp);
    return c;
  }

  GotoEnv env_of(const GotoAssumptions& a) {
    GotoEnv g;
    for (const auto& [l, b] : a) g[l] = satisfying_states(b, space);
    return g;
  }

  BoolPtr wp_of(const StmtPtr& stmt, const ColourDecomposition& comps,
                const GotoAssumptions& a) {
    return wp(stmt, phi(comps), env_of(a), space, subs).rendering;
  }

  ProofNode conseq_to(ProofNode inner, Judgement target,
                      const std::string& why) {
    ProofNode n;
    n.rule = RuleName::Conseq;
    n.side_conditions.push_back(
        {why, target.pre, inner.conclusion.pre});
    n.conclusion = std::move(target);
    n.premises.push_back(std::move(inner));
    return n;
  }

  // An axiom instance wrapped up to the full per-colour disjunction.
  ProofNode atom(RuleName rule, const GotoAssumptions& a, const StmtPtr& stmt,
                 const ColourDecomposition& comps, const Colour& colour,
                 BoolPtr axiom_pre) {
    ProofNode ax;
    ax.rule = rule;
    ax.conclusion = {a, axiom_pre, stmt,
                     m_modal(colour, m_base(axiom_pre))};
    if (rule == RuleName::Let) {
      // let's own post is N q with the pre q[e/x].
      const auto& asg = std::get<Stmt::Assign>(stmt->node);
      ax.conclusion.post = m_modal(Colour::N(), m_base(comps.at(Colour::N())));
      ax.conclusion.pre =
          substitute(comps.at(Colour::N()), asg.var, asg.value);
    }
    if (rule == RuleName::Go) {
      const auto& go = std::get<Stmt::Goto>(stmt->node);
      ax.side_conditions.push_back(
          {"p -> p_l", ax.conclusion.pre, env_at(a, go.label)});
    }
    Judgement target{a, wp_of(stmt, comps, a), stmt, phi(comps)};
    return conseq_to(std::move(ax), std::move(target), "axiom weakening");
  }

  // Proves A |> { wp(stmt, phi(comps)) } stmt { phi(comps) }, except for
  // calls, where the precondition may be strictly stronger (see sub rule).
  ProofNode prove(const GotoAssumptions& a, const StmtPtr& stmt,
                  const ColourDecomposition& comps) {
    return std::visit(
        [&](const auto& n) { return gen(n, a, stmt, comps); }, stmt->node);
  }

  ProofNode gen(const Stmt::Skip&, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Skp, a, stmt, comps, Colour::N(),
                comps.at(Colour::N()));
  }
  ProofNode gen(const Stmt::Return&, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Ret, a, stmt, comps, Colour::R(),
                comps.at(Colour::R()));
  }
  ProofNode gen(const Stmt::Break&, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Brk, a, stmt, comps, Colour::B(),
                comps.at(Colour::B()));
  }
  ProofNode gen(const Stmt::Goto& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Go, a, stmt, comps, Colour::G(n.label),
                comps.at(Colour::G(n.label)));
  }
  ProofNode gen(const Stmt::Throw& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Throw, a, stmt, comps, Colour::E(n.kind),
                comps.at(Colour::E(n.kind)));
  }
  ProofNode gen(const Stmt::Assign&, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    return atom(RuleName::Let, a, stmt, comps, Colour::N(), b_true());
  }

  ProofNode gen(const Stmt::Seq& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    ProofNode q = prove(a, n.second, comps);
    ProofNode p =
        prove(a, n.first, with(comps, Colour::N(), q.conclusion.pre));
    ProofNode out;
    out.rule = RuleName::Seq;
    out.conclusion = {a, p.conclusion.pre, stmt, phi(comps)};
    out.premises.push_back(std::move(p));
    out.premises.push_back(std::move(q));
    return out;
  }

  ProofNode gen(const Stmt::Guard& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    ProofNode body = prove(a, n.body, comps);
    BoolPtr w = wp_of(stmt, comps, a);
    ProofNode adjusted = conseq_to(
        std::move(body),
        Judgement{a, b_and(n.cond, w), n.body, phi(comps)},
        "guard strengthening");
    ProofNode out;
    out.rule = RuleName::Grd;
    out.conclusion = {a, w, stmt, phi(comps)};
    out.premises.push_back(std::move(adjusted));
    return out;
  }

  ProofNode gen(const Stmt::Choice& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    BoolPtr w = wp_of(stmt, comps, a);
    ModalPtr qt = phi(comps);
    auto branch = [&](const StmtPtr& s) {
      return conseq_to(prove(a, s, comps), Judgement{a, w, s, qt},
                       "choice strengthening");
    };
    ProofNode out;
    out.rule = RuleName::Dsj;
    out.conclusion = {a, w, stmt, qt};
    out.premises.push_back(branch(n.left));
    out.premises.push_back(branch(n.right));
    return out;
  }

  ProofNode gen(const Stmt::Do& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    // The conclusion of the do rule carries no B component; weaken at the
    // end if the target has one.
    ColourDecomposition core = with(comps, Colour::B(), b_false());
    BoolPtr inv = wp_of(stmt, core, a);
    ColourDecomposition body_q =
        with(with(core, Colour::B(), core.at(Colour::N())), Colour::N(), inv);
    ProofNode body = prove(a, n.body, body_q);
    ProofNode loop;
    loop.rule = RuleName::Do;
    loop.conclusion = {a, inv, stmt, phi(core)};
    loop.premises.push_back(std::move(body));
    return conseq_to(std::move(loop), Judgement{a, inv, stmt, phi(comps)},
                     "restore B component");
  }

  ProofNode gen(const Stmt::Labelled& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    ProofNode body = prove(a, n.body, comps);
    ProofNode out;
    out.rule = RuleName::Frm;
    out.conclusion = {a, body.conclusion.pre, stmt, phi(comps)};
    out.side_conditions.push_back(
        {"N p_l -> q", env_at(a, n.label), comps.at(Colour::N())});
    out.premises.push_back(std::move(body));
    return out;
  }

  ProofNode gen(const Stmt::LabelDecl& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    StateSet gl = label_fixpoint(n.label, n.body, env_of(a), space, subs);
    BoolPtr pl = render(gl, space);
    GotoAssumptions a2 = a;
    a2[n.label] = pl;
    ColourDecomposition body_q = with(comps, Colour::G(n.label), pl);
    ProofNode body = prove(a2, n.body, body_q);
    ProofNode decl;
    decl.rule = RuleName::Lbl;
    decl.conclusion = {a, body.conclusion.pre, stmt,
                       phi(with(comps, Colour::G(n.label), b_false()))};
    decl.premises.push_back(std::move(body));
    Judgement target{a, decl.conclusion.pre, stmt, phi(comps)};
    return conseq_to(std::move(decl), std::move(target),
                     "restore G_l component");
  }

  ProofNode gen(const Stmt::Call& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    auto body = subs.find(n.sub);
    if (body == subs.end()) throw NrbError("undefined subroutine: " + n.sub);
    // The sub rule can only speak about bodies whose exits are returns or
    // exceptions; other exits make the premise unprovable.
    ColourDecomposition body_q = comps;
    body_q.per_colour[Colour::R()] = comps.at(Colour::N());
    for (const Colour& c : U)
      if (c.kind == Colour::Kind::N || c.kind == Colour::Kind::B ||
          c.kind == Colour::Kind::G)
        body_q.per_colour[c] = b_false();
    ProofNode prem = prove(GotoAssumptions{}, body->second, body_q);
    ColourDecomposition call_q = comps;
    for (const Colour& c : U)
      if (c.kind != Colour::Kind::N && c.kind != Colour::Kind::E)
        call_q.per_colour[c] = b_false();
    ProofNode out;
    out.rule = RuleName::Sub;
    out.conclusion = {a, prem.conclusion.pre, stmt, phi(call_q)};
    out.premises.push_back(std::move(prem));
    Judgement target{a, out.conclusion.pre, stmt, phi(comps)};
    return conseq_to(std::move(out), std::move(target),
                     "restore dropped components");
  }

  ProofNode gen(const Stmt::TryCatch& n, const GotoAssumptions& a,
                const StmtPtr& stmt, const ColourDecomposition& comps) {
    ProofNode handler = prove(a, n.handler, comps);
    ProofNode body = prove(
        a, n.body, with(comps, Colour::E(n.kind), handler.conclusion.pre));
    ProofNode out;
    out.rule = RuleName::Try;
    out.conclusion = {a, body.conclusion.pre, stmt, phi(comps)};
    out.premises.push_back(std::move(body));
    out.premises.push_back(std::move(handler));
    return out;
  }
};

}  // namespace

ProofNode generate_proof(const Judgement& j, const StateSpace& space,
                         const SubMap& subs) {
  if (!j.stmt) throw NrbError("judgement has no statement");
  Generator gen{space, subs, {}};
  GotoEnv g = gen.env_of(j.assumptions);
  if (!determinism_check(j.stmt, g, space, subs))
    throw NotDeterministicError();
  Verdict v = check_triple(j, space, subs);
  if (!v.holds) throw TripleDoesNotHoldError(v.counterexamples);

  std::set<Colour> extra = colours_of(j.post);
  for (const auto& [l, b] : j.assumptions) extra.insert(Colour::G(l));
  gen.U = colour_universe(j.stmt, subs, extra);
  ColourDecomposition comps = decompose(j.post, gen.U);

  // A derivation can only promise goto exits covered by the assumptions,
  // for the labels that escape the statement unbound.
  std::set<std::string> open = free_labels(j.stmt);
  for (const auto& [l, b] : j.assumptions) open.insert(l);
  for (const std::string& l : open)
    if (!implies(comps.at(Colour::G(l)), env_at(j.assumptions, l), space))
      throw ProofGenerationError(
          "postcondition G component exceeds the assumption for label " + l);

  ProofNode inner = gen.prove(j.assumptions, j.stmt, comps);
  ProofNode root = gen.conseq_to(std::move(inner), j, "close to the stated triple");
  return root;
}

// --- serialization ----------------------------------------------------------

namespace {

nlohmann::ordered_json node_to_json(const ProofNode& n) {
  nlohmann::ordered_json out;
  out["rule"] = rule_name(n.rule);
  out["conclusion"] = to_string(n.conclusion);
  nlohmann::ordered_json scs = nlohmann::ordered_json::array();
  for (const SideCondition& sc : n.side_conditions)
    scs.push_back({{"description", sc.description},
                   {"lhs", to_string(sc.lhs)},
                   {"rhs", to_string(sc.rhs)}});
  out["side_conditions"] = scs;
  nlohmann::ordered_json prems = nlohmann::ordered_json::array();
  for (const ProofNode& p : n.premises) prems.push_back(node_to_json(p));
  out["premises"] = prems;
  return out;
}

ProofNode node_from_json(const nlohmann::ordered_json& in) {
  ProofNode n;
  n.rule = rule_from_name(in.at("rule").get<std::string>());
  n.conclusion = parse_judgement(in.at("conclusion").get<std::string>());
  for (const auto& sc : in.at("side_conditions"))
    n.side_conditions.push_back(
        {sc.at("description").get<std::string>(),
         parse_bool(sc.at("lhs").get<std::string>()),
         parse_bool(sc.at("rhs").get<std::string>())});
  for (const auto& p : in.at("premises"))
    n.premises.push_back(node_from_json(p));
  return n;
}

}  // namespace

std::string proof_to_json(const ProofNode& p) {
  return node_to_json(p).dump(2) + "\n";
}

ProofNode proof_from_json(const std::string& text) {
  return node_from_json(nlohmann::ordered_json::parse(text));
}

}  // namespace nrb
