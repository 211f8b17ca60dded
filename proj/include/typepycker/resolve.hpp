#pragma once

#include <string>
#include <vector>

#include "typepycker/ast.hpp"
#include "typepycker/diag.hpp"

namespace typepycker {

enum class BindingKind { LocalVar, Param, FunctionName, Extern };

const char* binding_kind_name(BindingKind k);

struct BindingInfo {
  int id = -1;
  BindingKind kind;
  std::string name;
  Span decl_span;
  Type declared;           // var/param annotation, Function type, or extern type
  int def_index = -1;      // FunctionName: index into ResolvedProgram::defs
  int param_index = -1;    // Param: position in the owning def
  int owner_def = -1;      // scope that owns this binding; -1 = module
  const Stmt* first_assign = nullptr;  // LocalVar: first Assign statement
};

// Program with every Var bound to a BindingId, plus the binding table and
// the function definitions in pre-order. Immutable after construction.
struct ResolvedProgram {
  Program program;
  std::vector<BindingInfo> bindings;
  std::vector<const Stmt*> defs;  // indexed by Stmt::def_index

  ResolvedProgram() = default;
  ResolvedProgram(ResolvedProgram&&) = default;
  ResolvedProgram& operator=(ResolvedProgram&&) = default;

  const BindingInfo& binding(int id) const { return bindings[static_cast<size_t>(id)]; }
  const Stmt& def(int index) const { return *defs[static_cast<size_t>(index)]; }
};

// Lexical scoping with function-level scopes: a name assigned anywhere in
// a function body is local to that whole body; parameters shadow outer
// names; externs are visible everywhere. Reading a variable before its
// first assignment is legal here and fails at runtime instead.
// Throws UnboundIdentifier / AnnotationMismatch as CompileError.
ResolvedProgram resolve_names(Program p);

}  // namespace typepycker
