#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "typepycker/span.hpp"
#include "typepycker/type.hpp"

namespace typepycker {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class ExprKind {
  IntLit,
  BoolLit,
  Var,
  Add,
  Call,
  If,
  ArrayLit,
  Index,
  Cast,  // inserted by elaboration, never produced by the parser
};

struct Expr {
  ExprKind kind;
  Span span;
  int id = -1;  // dense pre-order index, assigned by Program::renumber

  int64_t int_value = 0;    // IntLit
  bool bool_value = false;  // BoolLit
  std::string name;         // Var
  std::vector<ExprPtr> kids;

  int binding = -1;   // Var: BindingId after resolution
  Type static_type;   // filled by elaboration

  // Cast payload
  Type cast_source;
  Type cast_target;
  int cast_site = -1;

  Expr(ExprKind k, Span s) : kind(k), span(std::move(s)) {}

  // Kid layout: Add {lhs, rhs}; Call {callee, args...}; If {cond, then,
  // else}; ArrayLit {elems...}; Index {target, index}; Cast {inner}.
  const Expr& lhs() const { return *kids[0]; }
  const Expr& rhs() const { return *kids[1]; }
  const Expr& callee() const { return *kids[0]; }
  size_t arg_count() const { return kids.size() - 1; }
  const Expr& arg(size_t i) const { return *kids[i + 1]; }
  const Expr& cond() const { return *kids[0]; }
  const Expr& then_branch() const { return *kids[1]; }
  const Expr& else_branch() const { return *kids[2]; }
  const Expr& target() const { return *kids[0]; }
  const Expr& index() const { return *kids[1]; }
  const Expr& inner() const { return *kids[0]; }

  ExprPtr clone() const;
};

ExprPtr make_int(int64_t v, Span s);
ExprPtr make_bool(bool v, Span s);
ExprPtr make_var(std::string name, Span s);
ExprPtr make_expr(ExprKind k, Span s, std::vector<ExprPtr> kids);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

enum class StmtKind { ExprStmt, Return, Def, Assign, IndexAssign };

struct Param {
  std::string name;
  Type annot;  // Unknown when omitted
  Span span;
  int binding = -1;
};

struct Stmt {
  StmtKind kind;
  Span span;

  std::string name;           // Assign target / Def name
  Type annot;                 // Assign annotation / Def return type
  std::vector<Param> params;  // Def
  std::vector<ExprPtr> exprs; // ExprStmt/Return {e}; Assign {value}; IndexAssign {target, index, value}
  std::vector<StmtPtr> body;  // Def

  int binding = -1;    // Assign: var binding; Def: function binding
  int def_index = -1;  // Def: dense index assigned by resolution

  Stmt(StmtKind k, Span s) : kind(k), span(std::move(s)) {}

  const Expr& expr() const { return *exprs[0]; }
  const Expr& value() const { return *exprs.back(); }
  const Expr& target() const { return *exprs[0]; }
  const Expr& index() const { return *exprs[1]; }

  StmtPtr clone() const;
};

struct ExternDecl {
  std::string name;
  Type type;
  Span span;
};

struct Program {
  std::vector<StmtPtr> stmts;
  std::vector<ExternDecl> prelude;
  int num_exprs = 0;

  Program() = default;
  Program(Program&&) = default;
  Program& operator=(Program&&) = default;

  Program clone() const;

  // Reassigns dense pre-order expression ids; call after any tree edit.
  void renumber();

  const ExternDecl* find_extern(const std::string& name) const;
};

// Structural equality ignoring spans, ids, bindings and static types.
bool structurally_equal(const Expr& a, const Expr& b);
bool structurally_equal(const Stmt& a, const Stmt& b);
bool structurally_equal(const Program& a, const Program& b);

// Pre-order traversal helpers.
void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& fn);
void for_each_expr(const Program& p, const std::function<void(const Expr&)>& fn);
void for_each_stmt(const Program& p, const std::function<void(const Stmt&)>& fn);

}  // namespace typepycker
