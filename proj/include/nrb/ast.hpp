#ifndef NRB_AST_HPP
#define NRB_AST_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace nrb {

struct Term;
struct BoolTerm;
struct Stmt;
struct ModalFormula;

using TermPtr = std::shared_ptr<const Term>;
using BoolPtr = std::shared_ptr<const BoolTerm>;
using StmtPtr = std::shared_ptr<const Stmt>;
using ModalPtr = std::shared_ptr<const ModalFormula>;

// Where a syntactic construct came from. Hand-built ASTs carry the default.
struct SourceSpan {
  std::string file = "<memory>";
  int line = 1;
  int column = 1;
};

enum class RelOp { Lt, Gt, Le, Ge, Eq, Ne };

// Integer terms: n | x | n*e | e+e | (b ? e : e).
struct Term {
  struct Int {
    long long value;
  };
  struct Var {
    std::string name;
  };
  struct Scale {
    long long coeff;
    TermPtr arg;
  };
  struct Add {
    TermPtr left;
    TermPtr right;
  };
  struct Cond {
    BoolPtr test;
    TermPtr then_branch;
    TermPtr else_branch;
  };
  std::variant<Int, Var, Scale, Add, Cond> node;
};

// Boolean terms: true | false | e r e | b\/b | b/\b | ~b | exists x. b.
struct BoolTerm {
  struct True {};
  struct False {};
  struct Rel {
    TermPtr left;
    RelOp op;
    TermPtr right;
  };
  struct Or {
    BoolPtr left;
    BoolPtr right;
  };
  struct And {
    BoolPtr left;
    BoolPtr right;
  };
  struct Not {
    BoolPtr arg;
  };
  struct Exists {
    std::string var;
    BoolPtr body;
  };
  std::variant<True, False, Rel, Or, And, Not, Exists> node;
};

// How control left a code fragment. Stuck is internal to the transition
// model: it marks an assignment that tried to store an out-of-range value
// and is never visible through the public interfaces.
struct Colour {
  enum class Kind { N, R, B, G, E, Stuck };
  Kind kind = Kind::N;
  std::string tag;  // label for G, exception kind for E, detail for Stuck

  friend bool operator==(const Colour&, const Colour&) = default;
  friend auto operator<=>(const Colour&, const Colour&) = default;

  static Colour N() { return {Kind::N, ""}; }
  static Colour R() { return {Kind::R, ""}; }
  static Colour B() { return {Kind::B, ""}; }
  static Colour G(std::string label) { return {Kind::G, std::move(label)}; }
  static Colour E(std::string kind) { return {Kind::E, std::move(kind)}; }
};

struct Stmt {
  struct Skip {};
  struct Return {};
  struct Break {};
  struct Goto {
    std::string label;
  };
  struct Throw {
    std::string kind;
  };
  struct Seq {
    StmtPtr first;
    StmtPtr second;
  };
  struct Assign {
    std::string var;
    TermPtr value;
  };
  struct Guard {
    BoolPtr cond;
    StmtPtr body;
  };
  struct Choice {
    StmtPtr left;
    StmtPtr right;
  };
  struct Do {
    StmtPtr body;
  };
  struct Labelled {  // "P : l"
    StmtPtr body;
    std::string label;
  };
  struct LabelDecl {  // "label l. P"
    std::string label;
    StmtPtr body;
  };
  struct Call {
    std::string sub;
  };
  struct TryCatch {
    StmtPtr body;
    std::string kind;
    StmtPtr handler;
  };
  std::variant<Skip, Return, Break, Goto, Throw, Seq, Assign, Guard, Choice,
               Do, Labelled, LabelDecl, Call, TryCatch>
      node;
  SourceSpan span;
};

// Assertions over transitions: a colour requirement wrapping a predicate on
// the final state, closed under the propositional connectives.
struct ModalFormula {
  struct Base {
    BoolPtr prop;
  };
  struct Modal {
    Colour colour;  // N, R, B, G(l) or E(k)
    ModalPtr body;
  };
  struct Or {
    ModalPtr left;
    ModalPtr right;
  };
  struct And {
    ModalPtr left;
    ModalPtr right;
  };
  struct Not {
    ModalPtr arg;
  };
  std::variant<Base, Modal, Or, And, Not> node;
};

struct VarDecl {
  std::string name;
  long long low = 0;
  long long high = 0;
  SourceSpan span;
};

struct Program {
  std::vector<VarDecl> vars;
  std::map<std::string, StmtPtr> subs;
  StmtPtr main;
};

// Syntactic goto assumptions: label -> formula over the states assumed to be
// fed in at that label. An absent key reads as "no states".
using GotoAssumptions = std::map<std::string, BoolPtr>;

// A triple with context: assumptions |> {pre} stmt {post}. The precondition
// and every assumption are modality-free by construction of the parser; the
// invariant is re-checked where judgements are built programmatically.
struct Judgement {
  GotoAssumptions assumptions;
  BoolPtr pre;
  StmtPtr stmt;
  ModalPtr post;
};

// --- construction helpers ---------------------------------------------------

TermPtr t_int(long long n);
TermPtr t_var(std::string name);
TermPtr t_scale(long long coeff, TermPtr arg);
TermPtr t_add(TermPtr a, TermPtr b);
TermPtr t_cond(BoolPtr test, TermPtr a, TermPtr b);

BoolPtr b_true();
BoolPtr b_false();
BoolPtr b_rel(TermPtr a, RelOp op, TermPtr b);
BoolPtr b_or(BoolPtr a, BoolPtr b);
BoolPtr b_and(BoolPtr a, BoolPtr b);
BoolPtr b_not(BoolPtr a);
BoolPtr b_exists(std::string var, BoolPtr body);
BoolPtr b_eq(TermPtr a, TermPtr b);

StmtPtr s_skip();
StmtPtr s_return();
StmtPtr s_break();
StmtPtr s_goto(std::string label);
StmtPtr s_throw(std::string kind);
StmtPtr s_seq(StmtPtr a, StmtPtr b);
StmtPtr s_assign(std::string var, TermPtr value);
StmtPtr s_guard(BoolPtr cond, StmtPtr body);
StmtPtr s_choice(StmtPtr a, StmtPtr b);
StmtPtr s_do(StmtPtr body);
StmtPtr s_labelled(StmtPtr body, std::string label);
StmtPtr s_labeldecl(std::string label, StmtPtr body);
StmtPtr s_call(std::string sub);
StmtPtr s_try(StmtPtr body, std::string kind, StmtPtr handler);

ModalPtr m_base(BoolPtr prop);
ModalPtr m_modal(Colour colour, ModalPtr body);
ModalPtr m_or(ModalPtr a, ModalPtr b);
ModalPtr m_and(ModalPtr a, ModalPtr b);
ModalPtr m_not(ModalPtr a);

// Structural equality, ignoring source spans.
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const BoolPtr& a, const BoolPtr& b);
bool equal(const StmtPtr& a, const StmtPtr& b);
bool equal(const ModalPtr& a, const ModalPtr& b);

// True iff the formula contains no modal operator (trivially so for Base).
bool is_non_modal(const ModalPtr& m);

}  // namespace nrb

#endif  // NRB_AST_HPP
