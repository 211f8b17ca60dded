#pragma once

#include <cassert>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace typepycker {

// Gradual type: * (unknown), Bool, Int, Array(T), Function([T...], T).
// Value type with structural equality.
class Type {
 public:
  enum class Kind { Unknown, Bool, Int, Array, Function };

  Type() = default;  // Unknown

  static Type unknown() { return Type(); }
  static Type boolean() { return Type(Kind::Bool, {}); }
  static Type integer() { return Type(Kind::Int, {}); }
  static Type array(Type elem) {
    std::vector<Type> sub;
    sub.push_back(std::move(elem));
    return Type(Kind::Array, std::move(sub));
  }
  static Type function(std::vector<Type> params, Type ret) {
    params.push_back(std::move(ret));
    return Type(Kind::Function, std::move(params));
  }

  Kind kind() const { return kind_; }
  bool is_unknown() const { return kind_ == Kind::Unknown; }

  const Type& elem() const {
    assert(kind_ == Kind::Array);
    return sub_[0];
  }
  size_t param_count() const {
    assert(kind_ == Kind::Function);
    return sub_.size() - 1;
  }
  const Type& param(size_t i) const {
    assert(kind_ == Kind::Function && i + 1 < sub_.size());
    return sub_[i];
  }
  const Type& ret() const {
    assert(kind_ == Kind::Function);
    return sub_.back();
  }

  bool contains_unknown() const;

  bool operator==(const Type& o) const = default;

  std::string str() const;

 private:
  Type(Kind k, std::vector<Type> sub) : kind_(k), sub_(std::move(sub)) {}

  Kind kind_ = Kind::Unknown;
  std::vector<Type> sub_;  // Array: {elem}; Function: {params..., ret}
};

// Parses the surface syntax "*", "Bool", "Int", "Array(T)",
// "Function([T, ...], T)". Returns nullopt on malformed input.
std::optional<Type> parse_type(std::string_view text);

// Gradual consistency: Unknown ~ T, componentwise otherwise.
bool consistent(const Type& a, const Type& b);

// Static subtyping used by fast-slow dispatch: T <: T, T <: Unknown;
// Array invariant in its element; Function contravariant in parameters
// and covariant in the return type.
bool subtype(const Type& sub, const Type& super);

// True when `t` can be obtained from `general` by replacing whole
// subtrees of `general` with more precise types (i.e. t refines general).
bool refines(const Type& t, const Type& general);

// join(T, T) = T, otherwise Unknown. Used for If branch results.
Type join(const Type& a, const Type& b);

}  // namespace typepycker
