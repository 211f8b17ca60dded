#pragma once

#include <compare>
#include <string>

namespace typepycker {

// Source location of an AST node. line/column are 1-based; a
// default-constructed Span (line 0) marks synthesized nodes.
struct Span {
  std::string file;
  int line = 0;
  int column = 0;
  int length = 0;

  auto operator<=>(const Span&) const = default;

  bool valid() const { return line > 0; }

  std::string str() const {
    if (!valid()) return "<synthetic>";
    std::string s = file.empty() ? std::string("<input>") : file;
    s += ':';
    s += std::to_string(line);
    s += ':';
    s += std::to_string(column);
    return s;
  }
};

}  // namespace typepycker
