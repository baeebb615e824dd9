#include "nrb/eval.hpp"

#include <algorithm>
#include <atomic>

#include "nrb/errors.hpp"

namespace nrb {

namespace {
std::atomic<long long> g_exists_evals{0};
}

long long exists_evaluations() { return g_exists_evals.load(); }
void reset_exists_evaluations() { g_exists_evals.store(0); }

StateSpace::StateSpace(std::vector<VarDecl> vars, long long cap)
    : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end(),
            [](const VarDecl& a, const VarDecl& b) { return a.name < b.name; });
  for (const auto& v : vars_) {
    if (v.low > v.high)
      throw NrbError("empty range for variable " + v.name);
  }
  strides_.assign(vars_.size(), 1);
  // First variable (in name order) is most significant.
  for (int i = static_cast<int>(vars_.size()) - 1; i >= 0; --i) {
    strides_[i] = count_;
    long long size = vars_[i].high - vars_[i].low + 1;
    count_ *= size;
    if (count_ > cap) throw SizeLimitExceededError(count_, cap);
  }
}

StateSpace StateSpace::from_program(const Program& p, long long cap) {
  return StateSpace(p.vars, cap);
}

std::optional<int> StateSpace::var_index(const std::string& name) const {
  auto it = std::lower_bound(
      vars_.begin(), vars_.end(), name,
      [](const VarDecl& v, const std::string& n) { return v.name < n; });
  if (it == vars_.end() || it->name != name) return std::nullopt;
  return static_cast<int>(it - vars_.begin());
}

long long StateSpace::value(State s, int var_idx) const {
  const auto& v = vars_[var_idx];
  long long size = v.high - v.low + 1;
  return v.low + (s / strides_[var_idx]) % size;
}

std::optional<State> StateSpace::with(State s, int var_idx, long long v) const {
  const auto& decl = vars_[var_idx];
  if (v < decl.low || v > decl.high) return std::nullopt;
  long long old = value(s, var_idx);
  return static_cast<State>(s + (v - old) * strides_[var_idx]);
}

std::vector<State> StateSpace::all_states() const {
  std::vector<State> out(static_cast<size_t>(count_));
  for (long long i = 0; i < count_; ++i) out[static_cast<size_t>(i)] = static_cast<State>(i);
  return out;
}

long long eval_term(const TermPtr& e, const StateSpace& space, State s) {
  return std::visit(
      [&](const auto& x) -> long long {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Term::Int>) {
          return x.value;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          auto idx = space.var_index(x.name);
          if (!idx) throw UnboundVariableError(x.name);
          return space.value(s, *idx);
        } else if constexpr (std::is_same_v<T, Term::Scale>) {
          return x.coeff * eval_term(x.arg, space, s);
        } else if constexpr (std::is_same_v<T, Term::Add>) {
          return eval_term(x.left, space, s) + eval_term(x.right, space, s);
        } else {
          return eval_bool(x.test, space, s) ? eval_term(x.then_branch, space, s)
                                             : eval_term(x.else_branch, space, s);
        }
      },
      e->node);
}

namespace {

bool eval_rel(RelOp op, long long a, long long b) {
  switch (op) {
    case RelOp::Lt: return a < b;
    case RelOp::Gt: return a > b;
    case RelOp::Le: return a <= b;
    case RelOp::Ge: return a >= b;
    case RelOp::Eq: return a == b;
    case RelOp::Ne: return a != b;
  }
  return false;
}

}  // namespace

bool eval_bool(const BoolPtr& b, const StateSpace& space, State s) {
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoolTerm::True>) {
          return true;
        } else if constexpr (std::is_same_v<T, BoolTerm::False>) {
          return false;
        } else if constexpr (std::is_same_v<T, BoolTerm::Rel>) {
          return eval_rel(x.op, eval_term(x.left, space, s),
                          eval_term(x.right, space, s));
        } else if constexpr (std::is_same_v<T, BoolTerm::Or>) {
          return eval_bool(x.left, space, s) || eval_bool(x.right, space, s);
        } else if constexpr (std::is_same_v<T, BoolTerm::And>) {
          return eval_bool(x.left, space, s) && eval_bool(x.right, space, s);
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          return !eval_bool(x.arg, space, s);
        } else {
          // The bound variable ranges over its declared interval, not Z.
          auto idx = space.var_index(x.var);
          if (!idx) throw UnboundVariableError(x.var);
          g_exists_evals.fetch_add(1, std::memory_order_relaxed);
          const VarDecl& v = space.var(*idx);
          for (long long n = v.low; n <= v.high; ++n) {
            if (eval_bool(substitute(x.body, x.var, t_int(n)), space, s))
              return true;
          }
          return false;
        }
      },
      b->node);
}

namespace {

bool term_mentions(const TermPtr& t, const std::string& x);

bool bool_mentions(const BoolPtr& b, const std::string& x) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolTerm::True> ||
                      std::is_same_v<T, BoolTerm::False>) {
          return false;
        } else if constexpr (std::is_same_v<T, BoolTerm::Rel>) {
          return term_mentions(n.left, x) || term_mentions(n.right, x);
        } else if constexpr (std::is_same_v<T, BoolTerm::Or> ||
                             std::is_same_v<T, BoolTerm::And>) {
          return bool_mentions(n.left, x) || bool_mentions(n.right, x);
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          return bool_mentions(n.arg, x);
        } else {
          return n.var == x || bool_mentions(n.body, x);
        }
      },
      b->node);
}

bool term_mentions(const TermPtr& t, const std::string& x) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Int>) {
          return false;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name == x;
        } else if constexpr (std::is_same_v<T, Term::Scale>) {
          return term_mentions(n.arg, x);
        } else if constexpr (std::is_same_v<T, Term::Add>) {
          return term_mentions(n.left, x) || term_mentions(n.right, x);
        } else {
          return bool_mentions(n.test, x) || term_mentions(n.then_branch, x) ||
                 term_mentions(n.else_branch, x);
        }
      },
      t->node);
}

std::string fresh_name(const std::string& base, const BoolPtr& body,
                       const TermPtr& e) {
  for (int i = 0;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!bool_mentions(body, cand) && !term_mentions(e, cand)) return cand;
  }
}

}  // namespace

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& e) {
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Int>) {
          return t;
        } else if constexpr (std::is_same_v<T, Term::Var>) {
          return n.name == x ? e : t;
        } else if constexpr (std::is_same_v<T, Term::Scale>) {
          return t_scale(n.coeff, substitute(n.arg, x, e));
        } else if constexpr (std::is_same_v<T, Term::Add>) {
          return t_add(substitute(n.left, x, e), substitute(n.right, x, e));
        } else {
          return t_cond(substitute(n.test, x, e),
                        substitute(n.then_branch, x, e),
                        substitute(n.else_branch, x, e));
        }
      },
      t->node);
}

BoolPtr substitute(const BoolPtr& b, const std::string& x, const TermPtr& e) {
  return std::visit(
      [&](const auto& n) -> BoolPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, BoolTerm::True> ||
                      std::is_same_v<T, BoolTerm::False>) {
          return b;
        } else if constexpr (std::is_same_v<T, BoolTerm::Rel>) {
          return b_rel(substitute(n.left, x, e), n.op, substitute(n.right, x, e));
        } else if constexpr (std::is_same_v<T, BoolTerm::Or>) {
          return b_or(substitute(n.left, x, e), substitute(n.right, x, e));
        } else if constexpr (std::is_same_v<T, BoolTerm::And>) {
          return b_and(substitute(n.left, x, e), substitute(n.right, x, e));
        } else if constexpr (std::is_same_v<T, BoolTerm::Not>) {
          return b_not(substitute(n.arg, x, e));
        } else {
          if (n.var == x) return b;  // bound occurrences are untouched
          if (term_mentions(e, n.var)) {
            std::string fresh = fresh_name(n.var, n.body, e);
            BoolPtr renamed = substitute(n.body, n.var, t_var(fresh));
            return b_exists(fresh, substitute(renamed, x, e));
          }
          return b_exists(n.var, substitute(n.body, x, e));
        }
      },
      b->node);
}

std::vector<State> enumerate_states(const StateSpace& space) {
  return space.all_states();
}

StateSet satisfying_states(const BoolPtr& b, const StateSpace& space) {
  StateSet out;
  for (State s : space.all_states())
    if (eval_bool(b, space, s)) out.insert(s);
  return out;
}

}  // namespace nrb
