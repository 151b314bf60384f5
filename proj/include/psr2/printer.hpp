#pragma once

#include <string>

#include "psr2/ast.hpp"

namespace psr2 {

// Debug pretty-printer. Output re-parses to a structurally equal unit;
// binary and conditional expressions are fully parenthesized.
std::string print(const SourceUnit& unit);
std::string print(const Expr& expr);

// Structural equality ignoring source locations and resolver bindings.
bool structurally_equal(const SourceUnit& a, const SourceUnit& b);
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);

}  // namespace psr2
