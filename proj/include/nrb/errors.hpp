#ifndef NRB_ERRORS_HPP
#define NRB_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "nrb/ast.hpp"

namespace nrb {

struct NrbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : NrbError {
  SourceSpan span;
  ParseError(const std::string& msg, SourceSpan s)
      : NrbError(s.file + ":" + std::to_string(s.line) + ":" +
                 std::to_string(s.column) + ": " + msg),
        span(std::move(s)) {}
};

struct UnboundVariableError : NrbError {
  std::string var;
  explicit UnboundVariableError(const std::string& v)
      : NrbError("unbound variable: " + v), var(v) {}
};

struct SizeLimitExceededError : NrbError {
  long long states;
  long long cap;
  SizeLimitExceededError(long long n, long long c)
      : NrbError("state space of " + std::to_string(n) +
                 " states exceeds cap " + std::to_string(c)),
        states(n),
        cap(c) {}
};

struct DomainNotClosedError : NrbError {
  std::string var;
  long long value;
  DomainNotClosedError(const std::string& v, long long val)
      : NrbError("assignment stores " + std::to_string(val) + " into " + v +
                 ", outside its declared range"),
        var(v),
        value(val) {}
};

struct NotDeterministicError : NrbError {
  NotDeterministicError() : NrbError("program is not deterministic") {}
};

}  // namespace nrb

#endif  // NRB_ERRORS_HPP
