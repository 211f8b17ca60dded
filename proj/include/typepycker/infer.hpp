#pragma once

#include <vector>

#include "typepycker/points_to.hpp"
#include "typepycker/resolve.hpp"

namespace typepycker {

// given/inferred types for every binding, expression and function return.
// Invariant: inferred is always `given` with zero or more Unknown
// positions replaced by concrete types; concrete given positions are
// preserved bit-identically.
struct TypeTable {
  std::vector<Type> binding_given;
  std::vector<Type> binding_inferred;
  std::vector<Type> expr_given;
  std::vector<Type> expr_inferred;
  std::vector<Type> return_given;
  std::vector<Type> return_inferred;
};

// Conservative unification-based inference. Every Unknown-typed slot gets
// a type variable; constraints come from the syntax plus the callee map.
// Unknown positions in extern signatures absorb and impose no constraint.
// Unsatisfiable or unconstrained variables resolve to Unknown, so
// inference never rejects a program.
TypeTable infer_types(const ResolvedProgram& rp, const CalleeMap& cm);

}  // namespace typepycker
