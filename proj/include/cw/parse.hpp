#pragma once

#include <string_view>

#include "cw/multipoly.hpp"

namespace cw {

// Grammar (see docs/grammar.md):
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'
// Throws ParseError (with byte offset) on malformed input, undeclared
// variables and negative exponents.
MultiPoly parse_poly(std::string_view text, const Vars& vars);

}  // namespace cw
