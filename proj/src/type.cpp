#include "typepycker/type.hpp"

#include <cctype>

namespace typepycker {

bool Type::contains_unknown() const {
  switch (kind_) {
    case Kind::Unknown:
      return true;
    case Kind::Bool:
    case Kind::Int:
      return false;
    case Kind::Array:
    case Kind::Function:
      for (const Type& t : sub_)
        if (t.contains_unknown()) return true;
      return false;
  }
  return false;
}

std::string Type::str() const {
  switch (kind_) {
    case Kind::Unknown:
      return "*";
    case Kind::Bool:
      return "Bool";
    case Kind::Int:
      return "Int";
    case Kind::Array:
      return "Array(" + sub_[0].str() + ")";
    case Kind::Function: {
      std::string s = "Function([";
      for (size_t i = 0; i + 1 < sub_.size(); ++i) {
        if (i) s += ", ";
        s += sub_[i].str();
      }
      s += "], ";
      s += sub_.back().str();
      s += ")";
      return s;
    }
  }
  return "?";
}

namespace {

struct TypeTextParser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      pos++;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) == w) {
      size_t end = pos + w.size();
      if (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
        return false;
      pos = end;
      return true;
    }
    return false;
  }

  std::optional<Type> parse() {
    skip_ws();
    if (eat('*')) return Type::unknown();
    if (eat_word("Bool")) return Type::boolean();
    if (eat_word("Int")) return Type::integer();
    if (eat_word("Array")) {
      if (!eat('(')) return std::nullopt;
      auto elem = parse();
      if (!elem || !eat(')')) return std::nullopt;
      return Type::array(std::move(*elem));
    }
    if (eat_word("Function")) {
      if (!eat('(') || !eat('[')) return std::nullopt;
      std::vector<Type> params;
      skip_ws();
      if (pos < text.size() && text[pos] != ']') {
        while (true) {
          auto p = parse();
          if (!p) return std::nullopt;
          params.push_back(std::move(*p));
          if (eat(',')) continue;
          break;
        }
      }
      if (!eat(']') || !eat(',')) return std::nullopt;
      auto ret = parse();
      if (!ret || !eat(')')) return std::nullopt;
      return Type::function(std::move(params), std::move(*ret));
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Type> parse_type(std::string_view text) {
  TypeTextParser p{text};
  auto t = p.parse();
  if (!t) return std::nullopt;
  p.skip_ws();
  if (p.pos != text.size()) return std::nullopt;
  return t;
}

bool consistent(const Type& a, const Type& b) {
  if (a.is_unknown() || b.is_unknown()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Bool:
    case Type::Kind::Int:
      return true;
    case Type::Kind::Array:
      return consistent(a.elem(), b.elem());
    case Type::Kind::Function: {
      if (a.param_count() != b.param_count()) return false;
      for (size_t i = 0; i < a.param_count(); ++i)
        if (!consistent(a.param(i), b.param(i))) return false;
      return consistent(a.ret(), b.ret());
    }
    default:
      return false;
  }
}

bool subtype(const Type& sub, const Type& super) {
  if (super.is_unknown()) return true;
  if (sub.is_unknown()) return false;
  if (sub.kind() != super.kind()) return false;
  switch (sub.kind()) {
    case Type::Kind::Bool:
    case Type::Kind::Int:
      return true;
    case Type::Kind::Array:
      return sub.elem() == super.elem();
    case Type::Kind::Function: {
      if (sub.param_count() != super.param_count()) return false;
      for (size_t i = 0; i < sub.param_count(); ++i)
        if (!subtype(super.param(i), sub.param(i))) return false;
      return subtype(sub.ret(), super.ret());
    }
    default:
      return false;
  }
}

bool refines(const Type& t, const Type& general) {
  if (general.is_unknown()) return true;
  if (t.kind() != general.kind()) return false;
  switch (t.kind()) {
    case Type::Kind::Bool:
    case Type::Kind::Int:
      return true;
    case Type::Kind::Array:
      return refines(t.elem(), general.elem());
    case Type::Kind::Function: {
      if (t.param_count() != general.param_count()) return false;
      for (size_t i = 0; i < t.param_count(); ++i)
        if (!refines(t.param(i), general.param(i))) return false;
      return refines(t.ret(), general.ret());
    }
    default:
      return false;
  }
}

Type join(const Type& a, const Type& b) {
  return a == b ? a : Type::unknown();
}

}  // namespace typepycker
