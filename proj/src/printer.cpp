#include "nrb/printer.hpp"

#include <sstream>

namespace nrb {

namespace {

// Term precedence: 0 = sum, 1 = scale operand, 2 = primary.
void print_term(std::ostream& os, const TermPtr& t, int level);

void print_bool(std::ostream& os, const BoolPtr& b, int level);

const char* rel_text(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Gt: return ">";
    case RelOp::Le: return "<=";
    case RelOp::Ge: return ">=";
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
  }
  return "?";
}

void print_term(std::ostream& os, const TermPtr& t, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Int>) {
          os << n.value;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          os << n.name;
        } else if constexpr (std::is_same_v<T, Term::Scale>) {
          if (level > 1) os << "(";
          os << n.coeff << "*";
          print_term(os, n.arg, 1);
          if (level > 1) os << ")";
        } else if constexpr (std::is_same_v<T, Term::Add>) {
          if (level > 0) os << "(";
          print_term(os, n.left, 0);
          os << " + ";
          print_term(os, n.right, 1);
          if (level > 0) os << ")";
        } else {
          os << "(";
          print_bool(os, n.test, 0);
          os << " ? ";
          print_term(os, n.then_branch, 0);
          os << " : ";
          print_term(os, n.else_branch, 0);
          os << ")";
        }
      },
      t->node);
}

// Bool precedence: 0 = or, 1 = and, 2 = not/primary.
void print_bool(std::ostream& os, const BoolPtr& b, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolTerm::True>) {
          os << "true";
        } else if constexpr (std::is_same_v<T, BoolTerm::False>) {
          os << "false";
        } else if constexpr (std::is_same_v<T, BoolTerm::Rel>) {
          print_term(os, n.left, 0);
          os << " " << rel_text(n.op) << " ";
          print_term(os, n.right, 0);
        } else if constexpr (std::is_same_v<T, BoolTerm::Or>) {
          if (level > 0) os << "(";
          print_bool(os, n.left, 0);
          os << " \\/ ";
          print_bool(os, n.right, 1);
          if (level > 0) os << ")";
        } else if constexpr (std::is_same_v<T, BoolTerm::And>) {
          if (level > 1) os << "(";
          print_bool(os, n.left, 1);
          os << " /\\ ";
          print_bool(os, n.right, 2);
          if (level > 1) os << ")";
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          os << "~";
          print_bool(os, n.arg, 2);
        } else {
          // Always parenthesised so the binder cannot swallow a context.
          os << "(exists " << n.var << ". ";
          print_bool(os, n.body, 0);
          os << ")";
        }
      },
      b->node);
}

// Stmt levels: 0 = sequence, 1 = choice, 2 = guard, 3 = primary.
void print_stmt(std::ostream& os, const StmtPtr& s, int level);

void print_block(std::ostream& os, const StmtPtr& s) {
  os << "{ ";
  print_stmt(os, s, 0);
  os << " }";
}

void print_stmt(std::ostream& os, const StmtPtr& s, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Skip>) {
          os << "skip";
        } else if constexpr (std::is_same_v<T, Stmt::Return>) {
          os << "return";
        } else if constexpr (std::is_same_v<T, Stmt::Break>) {
          os << "break";
        } else if constexpr (std::is_same_v<T, Stmt::Goto>) {
          os << "goto " << n.label;
        } else if constexpr (std::is_same_v<T, Stmt::Throw>) {
          os << "throw " << n.kind;
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          if (level > 0) {
            print_block(os, s);
            return;
          }
          print_stmt(os, n.first, 0);
          os << "; ";
          // Right operand printed one level up so a right-nested
          // sequence keeps its shape through the left-folding parser.
          print_stmt(os, n.second, 1);
        } else if constexpr (std::is_same_v<T, Stmt::Assign>) {
          os << n.var << " = ";
          print_term(os, n.value, 0);
        } else if constexpr (std::is_same_v<T, Stmt::Guard>) {
          if (level > 2) {
            print_block(os, s);
            return;
          }
          print_bool(os, n.cond, 0);
          os << " -> ";
          print_stmt(os, n.body, 2);
        } else if constexpr (std::is_same_v<T, Stmt::Choice>) {
          if (level > 1) {
            print_block(os, s);
            return;
          }
          print_stmt(os, n.left, 1);
          os << " | ";
          print_stmt(os, n.right, 2);
        } else if constexpr (std::is_same_v<T, Stmt::Do>) {
          os << "do ";
          print_block(os, n.body);
        } else if constexpr (std::is_same_v<T, Stmt::Labelled>) {
          // Only sequence items may carry a trailing label, so brace it.
          os << "{ ";
          print_stmt(os, n.body, 1);
          os << " : " << n.label << " }";
        } else if constexpr (std::is_same_v<T, Stmt::LabelDecl>) {
          // Braced so the declaration does not swallow a following item.
          os << "{ label " << n.label << ". ";
          print_stmt(os, n.body, 0);
          os << " }";
        } else if constexpr (std::is_same_v<T, Stmt::Call>) {
          os << "call " << n.sub;
        } else {
          os << "try ";
          print_block(os, n.body);
          os << " catch (" << n.kind << ") ";
          print_block(os, n.handler);
        }
      },
      s->node);
}

// Modal levels: 0 = or, 1 = and, 2 = not/primary.
void print_modal(std::ostream& os, const ModalPtr& m, int level);

// Base over a compound proposition prints as the equivalent modal
// connective tree so reparsing yields the same text again.
void print_base(std::ostream& os, const BoolPtr& b, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolTerm::Or>) {
          if (level > 0) os << "(";
          print_base(os, n.left, 0);
          os << " \\/ ";
          print_base(os, n.right, 1);
          if (level > 0) os << ")";
        } else if constexpr (std::is_same_v<T, BoolTerm::And>) {
          if (level > 1) os << "(";
          print_base(os, n.left, 1);
          os << " /\\ ";
          print_base(os, n.right, 2);
          if (level > 1) os << ")";
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          os << "~";
          print_base(os, n.arg, 2);
        } else {
          print_bool(os, b, 2);
        }
      },
      b->node);
}

void print_modal(std::ostream& os, const ModalPtr& m, int level) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ModalFormula::Base>) {
          print_base(os, n.prop, level);
        } else if constexpr (std::is_same_v<T, ModalFormula::Modal>) {
          os << to_string(n.colour) << "[";
          print_modal(os, n.body, 0);
          os << "]";
        } else if constexpr (std::is_same_v<T, ModalFormula::Or>) {
          if (level > 0) os << "(";
          print_modal(os, n.left, 0);
          os << " \\/ ";
          print_modal(os, n.right, 1);
          if (level > 0) os << ")";
        } else if constexpr (std::is_same_v<T, ModalFormula::And>) {
          if (level > 1) os << "(";
          print_modal(os, n.left, 1);
          os << " /\\ ";
          print_modal(os, n.right, 2);
          if (level > 1) os << ")";
        } else {
          os << "~";
          print_modal(os, n.arg, 2);
        }
      },
      m->node);
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

std::string to_string(const BoolPtr& b) {
  std::ostringstream os;
  print_bool(os, b, 0);
  return os.str();
}

std::string to_string(const StmtPtr& s) {
  std::ostringstream os;
  print_stmt(os, s, 0);
  return os.str();
}

std::string to_string(const ModalPtr& m) {
  std::ostringstream os;
  print_modal(os, m, 0);
  return os.str();
}

std::string to_string(const Colour& c) {
  switch (c.kind) {
    case Colour::Kind::N: return "N";
    case Colour::Kind::R: return "R";
    case Colour::Kind::B: return "B";
    case Colour::Kind::G: return "G(" + c.tag + ")";
    case Colour::Kind::E: return "E(" + c.tag + ")";
    case Colour::Kind::Stuck: return "<stuck:" + c.tag + ">";
  }
  return "?";
}

std::string to_string(const Judgement& j) {
  std::ostringstream os;
  for (const auto& [label, formula] : j.assumptions)
    os << "assume G(" << label << "): " << to_string(formula) << "; ";
  os << "pre: " << to_string(j.pre) << "; ";
  if (j.stmt) {
    os << "prog: ";
    std::ostringstream body;
    print_stmt(body, j.stmt, 1);  // brace a bare sequence
    os << body.str() << "; ";
  }
  os << "post: " << to_string(j.post) << ";";
  return os.str();
}

std::string to_string(const Program& p) {
  std::ostringstream os;
  for (const auto& v : p.vars)
    os << "var " << v.name << " in " << v.low << " .. " << v.high << ";\n";
  for (const auto& [name, body] : p.subs) {
    os << "sub " << name << " ";
    std::ostringstream b;
    print_stmt(b, body, 0);
    os << "{ " << b.str() << " }\n";
  }
  os << "main { ";
  print_stmt(os, p.main, 0);
  os << " }\n";
  return os.str();
}

}  // namespace nrb
