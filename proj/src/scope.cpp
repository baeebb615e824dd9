#include "nrb/scope.hpp"

#include <functional>
#include <map>

namespace nrb {

namespace {

void walk(const StmtPtr& s, const std::function<void(const Stmt&)>& f) {
  f(*s);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Seq>) {
          walk(n.first, f);
          walk(n.second, f);
        } else if constexpr (std::is_same_v<T, Stmt::Guard>) {
          walk(n.body, f);
        } else if constexpr (std::is_same_v<T, Stmt::Choice>) {
          walk(n.left, f);
          walk(n.right, f);
        } else if constexpr (std::is_same_v<T, Stmt::Do>) {
          walk(n.body, f);
        } else if constexpr (std::is_same_v<T, Stmt::Labelled>) {
          walk(n.body, f);
        } else if constexpr (std::is_same_v<T, Stmt::LabelDecl>) {
          walk(n.body, f);
        } else if constexpr (std::is_same_v<T, Stmt::TryCatch>) {
          walk(n.body, f);
          walk(n.handler, f);
        }
      },
      s->node);
}

void check_labels(const StmtPtr& s, std::set<std::string>& in_scope,
                  std::vector<Diagnostic>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Stmt::Goto>) {
          if (!in_scope.count(n.label))
            out.push_back({Diagnostic::Kind::UndeclaredLabel, n.label, s->span,
                           "label " + n.label + " used outside any declaration"});
        } else if constexpr (std::is_same_v<T, Stmt::Labelled>) {
          if (!in_scope.count(n.label))
            out.push_back({Diagnostic::Kind::UndeclaredLabel, n.label, s->span,
                           "label " + n.label + " used outside any declaration"});
          check_labels(n.body, in_scope, out);
        } else if constexpr (std::is_same_v<T, Stmt::LabelDecl>) {
          if (in_scope.count(n.label)) {
            out.push_back({Diagnostic::Kind::DuplicateLabelDecl, n.label, s->span,
                           "label " + n.label + " redeclared in its own scope"});
            check_labels(n.body, in_scope, out);
          } else {
            in_scope.insert(n.label);
            check_labels(n.body, in_scope, out);
            in_scope.erase(n.label);
          }
        } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
          check_labels(n.first, in_scope, out);
          check_labels(n.second, in_scope, out);
        } else if constexpr (std::is_same_v<T, Stmt::Guard>) {
          check_labels(n.body, in_scope, out);
        } else if constexpr (std::is_same_v<T, Stmt::Choice>) {
          check_labels(n.left, in_scope, out);
          check_labels(n.right, in_scope, out);
        } else if constexpr (std::is_same_v<T, Stmt::Do>) {
          check_labels(n.body, in_scope, out);
        } else if constexpr (std::is_same_v<T, Stmt::TryCatch>) {
          check_labels(n.body, in_scope, out);
          check_labels(n.handler, in_scope, out);
        }
      },
      s->node);
}

}  // namespace

std::vector<Diagnostic> scope_check(const Program& program) {
  std::vector<Diagnostic> out;

  std::set<std::string> seen_vars;
  for (const auto& v : program.vars) {
    if (v.low > v.high)
      out.push_back({Diagnostic::Kind::BadVarBounds, v.name, v.span,
                     "variable " + v.name + " has an empty range"});
    if (!seen_vars.insert(v.name).second)
      out.push_back({Diagnostic::Kind::DuplicateVar, v.name, v.span,
                     "variable " + v.name + " declared twice"});
  }

  auto check_body = [&](const StmtPtr& body) {
    std::set<std::string> scope;
    check_labels(body, scope, out);
    walk(body, [&](const Stmt& st) {
      if (const auto* c = std::get_if<Stmt::Call>(&st.node)) {
        if (!program.subs.count(c->sub))
          out.push_back({Diagnostic::Kind::UndefinedSub, c->sub, st.span,
                         "call to undefined subroutine " + c->sub});
      }
    });
  };
  if (program.main) check_body(program.main);
  for (const auto& [name, body] : program.subs) check_body(body);

  // Call-graph acyclicity: the model gives no meaning to recursive bodies.
  std::map<std::string, std::set<std::string>> calls;
  for (const auto& [name, body] : program.subs) {
    auto& edges = calls[name];
    walk(body, [&](const Stmt& st) {
      if (const auto* c = std::get_if<Stmt::Call>(&st.node)) edges.insert(c->sub);
    });
  }
  std::map<std::string, int> mark;  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(const std::string&)> has_cycle = [&](const std::string& h) {
    if (mark[h] == 1) return true;
    if (mark[h] == 2) return false;
    mark[h] = 1;
    for (const auto& callee : calls[h])
      if (calls.count(callee) && has_cycle(callee)) return true;
    mark[h] = 2;
    return false;
  };
  for (const auto& [name, body] : program.subs) {
    if (mark[name] == 0 && has_cycle(name))
      out.push_back({Diagnostic::Kind::RecursiveCall, name, body->span,
                     "subroutine " + name + " is (mutually) recursive"});
  }
  return out;
}

std::set<std::string> free_labels(const StmtPtr& stmt) {
  std::set<std::string> out;
  std::function<void(const StmtPtr&, std::set<std::string>&)> go =
      [&](const StmtPtr& s, std::set<std::string>& bound) {
        std::visit(
            [&](const auto& n) {
              using T = std::decay_t<decltype(n)>;
              if constexpr (std::is_same_v<T, Stmt::Goto>) {
                if (!bound.count(n.label)) out.insert(n.label);
              } else if constexpr (std::is_same_v<T, Stmt::Labelled>) {
                if (!bound.count(n.label)) out.insert(n.label);
                go(n.body, bound);
              } else if constexpr (std::is_same_v<T, Stmt::LabelDecl>) {
                bool added = bound.insert(n.label).second;
                go(n.body, bound);
                if (added) bound.erase(n.label);
              } else if constexpr (std::is_same_v<T, Stmt::Seq>) {
                go(n.first, bound);
                go(n.second, bound);
              } else if constexpr (std::is_same_v<T, Stmt::Guard>) {
                go(n.body, bound);
              } else if constexpr (std::is_same_v<T, Stmt::Choice>) {
                go(n.left, bound);
                go(n.right, bound);
              } else if constexpr (std::is_same_v<T, Stmt::Do>) {
                go(n.body, bound);
              } else if constexpr (std::is_same_v<T, Stmt::TryCatch>) {
                go(n.body, bound);
                go(n.handler, bound);
              }
            },
            s->node);
      };
  std::set<std::string> bound;
  go(stmt, bound);
  return out;
}

std::set<std::string> mentioned_labels(const StmtPtr& stmt) {
  std::set<std::string> out;
  walk(stmt, [&](const Stmt& st) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Stmt::Goto>) out.insert(n.label);
          if constexpr (std::is_same_v<T, Stmt::Labelled>) out.insert(n.label);
          if constexpr (std::is_same_v<T, Stmt::LabelDecl>) out.insert(n.label);
        },
        st.node);
  });
  return out;
}

std::set<std::string> mentioned_kinds(const StmtPtr& stmt) {
  std::set<std::string> out;
  walk(stmt, [&](const Stmt& st) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Stmt::Throw>) out.insert(n.kind);
          if constexpr (std::is_same_v<T, Stmt::TryCatch>) out.insert(n.kind);
        },
        st.node);
  });
  return out;
}

}  // namespace nrb
