#pragma once

#include <map>
#include <vector>

#include "typepycker/resolve.hpp"

namespace typepycker {

struct CallSiteInfo {
  int expr_id;
  Span span;
};

// Result of the context-insensitive, flow-insensitive callee analysis:
// for every call site, the over-approximated set of function targets
// (Def or extern bindings) its callee expression may hold. Empty sets
// are legal (calling a value no function ever flows into).
struct CalleeMap {
  std::vector<CallSiteInfo> sites;          // pre-order over the program
  std::map<int, std::vector<int>> targets;  // call expr id -> sorted binding ids

  const std::vector<int>& targets_of(int expr_id) const {
    static const std::vector<int> empty;
    auto it = targets.find(expr_id);
    return it == targets.end() ? empty : it->second;
  }
};

// Propagates function values through assignments, branches, array cells
// (one summary cell per value), arguments and returns until fixpoint,
// ignoring statement order and conditions. Externs are opaque: values
// passed to them are not treated as called back.
CalleeMap points_to(const ResolvedProgram& rp);

}  // namespace typepycker
