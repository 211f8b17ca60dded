#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "typepycker/span.hpp"

namespace typepycker {

// Fatal front-end error (parse, resolution, elaboration). The `kind`
// tag identifies the error class for tests and CLI output.
class CompileError : public std::runtime_error {
 public:
  CompileError(std::string kind, Span span, const std::string& msg)
      : std::runtime_error(span.str() + ": " + kind + ": " + msg),
        kind_(std::move(kind)),
        span_(std::move(span)) {}

  const std::string& kind() const { return kind_; }
  const Span& span() const { return span_; }

 private:
  std::string kind_;
  Span span_;
};

// Non-fatal diagnostic collected during analysis (e.g. ArityMismatch
// while wiring call edges).
struct Diagnostic {
  std::string kind;
  Span span;
  std::string message;
};

}  // namespace typepycker
