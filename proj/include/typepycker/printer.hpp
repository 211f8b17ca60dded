#pragma once

#include <string>

#include "typepycker/ast.hpp"

namespace typepycker {

// Canonical source form: extern declarations first, 4-space indentation,
// every annotation explicit (Unknown printed as `: *`). Deterministic;
// parse(print_program(p)) is structurally equal to p.
std::string print_program(const Program& p);

std::string print_expr(const Expr& e);
std::string print_stmt(const Stmt& s, int indent = 0);

}  // namespace typepycker
