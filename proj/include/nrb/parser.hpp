#pragma once

#include <string>

#include "nrb/ast.hpp"

namespace nrb {

// Parse a full program file: var declarations, sub definitions, main block.
Program parse_program(const std::string& text);

// Parse a statement on its own; top-level sequences are allowed.
StmtPtr parse_stmt(const std::string& text);

// Parse a modal assertion.
ModalPtr parse_formula(const std::string& text);

// Parse a boolean proposition (no modal operators).
BoolPtr parse_bool(const std::string& text);

// Parse a judgement: assume/pre/prog/post sections. The prog section may
// be omitted when the statement is supplied separately (e.g. a program's
// main body); Judgement.stmt is null in that case.
Judgement parse_judgement(const std::string& text);

}  // namespace nrb
