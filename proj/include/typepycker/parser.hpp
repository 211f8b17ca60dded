#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "typepycker/ast.hpp"
#include "typepycker/diag.hpp"

namespace typepycker {

// Parses a whole source file. Omitted annotations and explicit `: *`
// both parse to Type::unknown(). Throws CompileError (ParseError,
// DuplicateDef, DuplicateExtern) on malformed input.
Program parse(std::string_view source, const std::string& file = "<input>");

// Parses prelude text: one `extern <name>: <type>` declaration per line.
std::vector<ExternDecl> parse_prelude(std::string_view text,
                                      const std::string& file = "<prelude>");

// parse() with extern declarations from a separate prelude prepended.
// A name declared in both places must carry the same type.
Program parse_with_prelude(std::string_view source, std::string_view prelude,
                           const std::string& file = "<input>");

}  // namespace typepycker
