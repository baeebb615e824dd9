#include "nrb/ast.hpp"

namespace nrb {

TermPtr t_int(long long n) { return std::make_shared<Term>(Term{Term::Int{n}}); }
TermPtr t_var(std::string name) {
  return std::make_shared<Term>(Term{Term::Var{std::move(name)}});
}
TermPtr t_scale(long long coeff, TermPtr arg) {
  return std::make_shared<Term>(Term{Term::Scale{coeff, std::move(arg)}});
}
TermPtr t_add(TermPtr a, TermPtr b) {
  return std::make_shared<Term>(Term{Term::Add{std::move(a), std::move(b)}});
}
TermPtr t_cond(BoolPtr test, TermPtr a, TermPtr b) {
  return std::make_shared<Term>(
      Term{Term::Cond{std::move(test), std::move(a), std::move(b)}});
}

BoolPtr b_true() { return std::make_shared<BoolTerm>(BoolTerm{BoolTerm::True{}}); }
BoolPtr b_false() { return std::make_shared<BoolTerm>(BoolTerm{BoolTerm::False{}}); }
BoolPtr b_rel(TermPtr a, RelOp op, TermPtr b) {
  return std::make_shared<BoolTerm>(
      BoolTerm{BoolTerm::Rel{std::move(a), op, std::move(b)}});
}
BoolPtr b_or(BoolPtr a, BoolPtr b) {
  return std::make_shared<BoolTerm>(
      BoolTerm{BoolTerm::Or{std::move(a), std::move(b)}});
}
BoolPtr b_and(BoolPtr a, BoolPtr b) {
  return std::make_shared<BoolTerm>(
      BoolTerm{BoolTerm::And{std::move(a), std::move(b)}});
}
BoolPtr b_not(BoolPtr a) {
  return std::make_shared<BoolTerm>(BoolTerm{BoolTerm::Not{std::move(a)}});
}
BoolPtr b_exists(std::string var, BoolPtr body) {
  return std::make_shared<BoolTerm>(
      BoolTerm{BoolTerm::Exists{std::move(var), std::move(body)}});
}
BoolPtr b_eq(TermPtr a, TermPtr b) {
  return b_rel(std::move(a), RelOp::Eq, std::move(b));
}

StmtPtr s_skip() { return std::make_shared<Stmt>(Stmt{Stmt::Skip{}}); }
StmtPtr s_return() { return std::make_shared<Stmt>(Stmt{Stmt::Return{}}); }
StmtPtr s_break() { return std::make_shared<Stmt>(Stmt{Stmt::Break{}}); }
StmtPtr s_goto(std::string label) {
  return std::make_shared<Stmt>(Stmt{Stmt::Goto{std::move(label)}});
}
StmtPtr s_throw(std::string kind) {
  return std::make_shared<Stmt>(Stmt{Stmt::Throw{std::move(kind)}});
}
StmtPtr s_seq(StmtPtr a, StmtPtr b) {
  return std::make_shared<Stmt>(Stmt{Stmt::Seq{std::move(a), std::move(b)}});
}
StmtPtr s_assign(std::string var, TermPtr value) {
  return std::make_shared<Stmt>(
      Stmt{Stmt::Assign{std::move(var), std::move(value)}});
}
StmtPtr s_guard(BoolPtr cond, StmtPtr body) {
  return std::make_shared<Stmt>(
      Stmt{Stmt::Guard{std::move(cond), std::move(body)}});
}
StmtPtr s_choice(StmtPtr a, StmtPtr b) {
  return std::make_shared<Stmt>(Stmt{Stmt::Choice{std::move(a), std::move(b)}});
}
StmtPtr s_do(StmtPtr body) {
  return std::make_shared<Stmt>(Stmt{Stmt::Do{std::move(body)}});
}
StmtPtr s_labelled(StmtPtr body, std::string label) {
  return std::make_shared<Stmt>(
      Stmt{Stmt::Labelled{std::move(body), std::move(label)}});
}
StmtPtr s_labeldecl(std::string label, StmtPtr body) {
  return std::make_shared<Stmt>(
      Stmt{Stmt::LabelDecl{std::move(label), std::move(body)}});
}
StmtPtr s_call(std::string sub) {
  return std::make_shared<Stmt>(Stmt{Stmt::Call{std::move(sub)}});
}
StmtPtr s_try(StmtPtr body, std::string kind, StmtPtr handler) {
  return std::make_shared<Stmt>(
      Stmt{Stmt::TryCatch{std::move(body), std::move(kind), std::move(handler)}});
}

ModalPtr m_base(BoolPtr prop) {
  return std::make_shared<ModalFormula>(
      ModalFormula{ModalFormula::Base{std::move(prop)}});
}
ModalPtr m_modal(Colour colour, ModalPtr body) {
  return std::make_shared<ModalFormula>(
      ModalFormula{ModalFormula::Modal{std::move(colour), std::move(body)}});
}
ModalPtr m_or(ModalPtr a, ModalPtr b) {
  return std::make_shared<ModalFormula>(
      ModalFormula{ModalFormula::Or{std::move(a), std::move(b)}});
}
ModalPtr m_and(ModalPtr a, ModalPtr b) {
  return std::make_shared<ModalFormula>(
      ModalFormula{ModalFormula::And{std::move(a), std::move(b)}});
}
ModalPtr m_not(ModalPtr a) {
  return std::make_shared<ModalFormula>(ModalFormula{ModalFormula::Not{std::move(a)}});
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Term::Int>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<T, Term::Scale>) {
          return x.coeff == y.coeff && equal(x.arg, y.arg);
        } else if constexpr (std::is_same_v<T, Term::Add>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else {
          return equal(x.test, y.test) && equal(x.then_branch, y.then_branch) &&
                 equal(x.else_branch, y.else_branch);
        }
      },
      a->node);
}

bool equal(const BoolPtr& a, const BoolPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, BoolTerm::True> ||
                      std::is_same_v<T, BoolTerm::False>) {
          return true;
        } else if constexpr (std::is_same_v<T, BoolTerm::Rel>) {
          return x.op == y.op && equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, BoolTerm::Or> ||
                             std::is_same_v<T, BoolTerm::And>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          return equal(x.arg, y.arg);
        } else {
          return x.var == y.var && equal(x.body, y.body);
        }
      },
      a->node);
}

bool equal(const StmtPtr& a, const StmtPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, Stmt::Skip> ||
                      std::is_same_v<T, Stmt::Return> ||
                      std::is_same_v<T, Stmt::Break>) {
          return true;
        } else if constexpr (std::is_same_v<T, Stmt::Goto>) {
          return x.label == y.label;
        } else if constexpr (std::is_same_v<T, Stmt::Throw>) {
          return x.kind == y.kind;
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          return equal(x.first, y.first) && equal(x.second, y.second);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          return x.var == y.var && equal(x.value, y.value);
        } else if constexpr (std::is_same_v<T, Stmt::Guard>) {
          return equal(x.cond, y.cond) && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Stmt::Choice>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else if constexpr (std::is_same_v<T, Stmt::Do>) {
          return equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Stmt::Labelled>) {
          return x.label == y.label && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Stmt::LabelDecl>) {
          return x.label == y.label && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          return x.sub == y.sub;
        } else {
          return x.kind == y.kind && equal(x.body, y.body) &&
                 equal(x.handler, y.handler);
        }
      },
      a->node);
}

bool equal(const ModalPtr& a, const ModalPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->node.index() != b->node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->node);
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
          return equal(x.prop, y.prop);
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          return x.colour == y.colour && equal(x.body, y.body);
        } else if constexpr (std::is_same_v<T, ModalFormula::Or> ||
                             std::is_same_v<T, ModalFormula::And>) {
          return equal(x.left, y.left) && equal(x.right, y.right);
        } else {
          return equal(x.arg, y.arg);
        }
      },
      a->node);
}

bool is_non_modal(const ModalPtr& m) {
  return std::visit(
      [](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
          return true;
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          return false;
        } else if constexpr (std::is_same_v<T, ModalFormula::Not>) {
          return is_non_modal(x.arg);
        } else {
          return is_non_modal(x.left) && is_non_modal(x.right);
        }
      },
      m->node);
}

}  // namespace nrb
