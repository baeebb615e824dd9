#ifndef NRB_SCOPE_HPP
#define NRB_SCOPE_HPP

#include <set>
#include <string>
#include <vector>

#include "nrb/ast.hpp"

namespace nrb {

struct Diagnostic {
  enum class Kind {
    UndeclaredLabel,
    DuplicateLabelDecl,
    UndefinedSub,
    RecursiveCall,
    BadVarBounds,
    DuplicateVar,
  };
  Kind kind;
  std::string subject;  // label / subroutine / variable concerned
  SourceSpan span;
  std::string message;
};

// Empty iff all label-scope invariants hold, every called subroutine is
// defined, variable bounds are sane, and the call graph is acyclic.
std::vector<Diagnostic> scope_check(const Program& program);

// Labels used by Goto/Labelled but not bound by an enclosing LabelDecl.
std::set<std::string> free_labels(const StmtPtr& stmt);

// All labels / exception kinds mentioned anywhere in the statement.
std::set<std::string> mentioned_labels(const StmtPtr& stmt);
std::set<std::string> mentioned_kinds(const StmtPtr& stmt);

}  // namespace nrb

#endif  // NRB_SCOPE_HPP
