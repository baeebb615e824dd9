#ifndef NRB_PRINTER_HPP
#define NRB_PRINTER_HPP

#include <string>

#include "nrb/ast.hpp"

namespace nrb {

// Concrete-syntax rendering. Output parses back to a structurally equal
// AST (modulo the documented Base-normalisation of modal formulas).
std::string to_string(const TermPtr& t);
std::string to_string(const BoolPtr& b);
std::string to_string(const StmtPtr& s);
std::string to_string(const ModalPtr& m);
std::string to_string(const Colour& c);
std::string to_string(const Judgement& j);
std::string to_string(const Program& p);

}  // namespace nrb

#endif  // NRB_PRINTER_HPP
