#include "typepycker/printer.hpp"

namespace typepycker {
namespace {

// Precedence levels: if-expressions bind loosest, then +, then
// call/index. Children below the required level get parentheses.
enum Level { kExpr = 0, kAdd = 1, kPostfix = 2 };

int level_of(const Expr& e) {
  switch (e.kind) {
    case ExprKind::If:
      return kExpr;
    case ExprKind::Add:
      return kAdd;
    default:
      return kPostfix;
  }
}

void print_expr_at(const Expr& e, int min_level, std::string& out);

void print_child(const Expr& e, int min_level, std::string& out) {
  if (level_of(e) < min_level) {
    out += '(';
    print_expr_at(e, kExpr, out);
    out += ')';
  } else {
    print_expr_at(e, min_level, out);
  }
}

void print_expr_at(const Expr& e, int min_level, std::string& out) {
  (void)min_level;
  switch (e.kind) {
    case ExprKind::IntLit:
      out += std::to_string(e.int_value);
      return;
    case ExprKind::BoolLit:
      out += e.bool_value ? "true" : "false";
      return;
    case ExprKind::Var:
      out += e.name;
      return;
    case ExprKind::Add:
      print_child(e.lhs(), kAdd, out);
      out += " + ";
      print_child(e.rhs(), kPostfix, out);
      return;
    case ExprKind::If:
      out += "if ";
      print_child(e.cond(), kExpr, out);
      out += " then ";
      print_child(e.then_branch(), kExpr, out);
      out += " else ";
      print_child(e.else_branch(), kExpr, out);
      return;
    case ExprKind::Call: {
      print_child(e.callee(), kPostfix, out);
      out += '(';
      for (size_t i = 0; i < e.arg_count(); ++i) {
        if (i) out += ", ";
        print_child(e.arg(i), kExpr, out);
      }
      out += ')';
      return;
    }
    case ExprKind::ArrayLit: {
      out += '[';
      for (size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        print_child(*e.kids[i], kExpr, out);
      }
      out += ']';
      return;
    }
    case ExprKind::Index:
      print_child(e.target(), kPostfix, out);
      out += '[';
      print_child(e.index(), kExpr, out);
      out += ']';
      return;
    case ExprKind::Cast:
      // Casts only exist in elaborated trees; shown for debugging output.
      out += '{';
      out += e.cast_target.str();
      out += " <= ";
      out += e.cast_source.str();
      out += '}';
      print_child(e.inner(), kPostfix, out);
      return;
  }
}

void print_stmt_at(const Stmt& s, int indent, std::string& out) {
  out.append(static_cast<size_t>(indent) * 4, ' ');
  switch (s.kind) {
    case StmtKind::ExprStmt:
      print_expr_at(s.expr(), kExpr, out);
      out += '\n';
      return;
    case StmtKind::Return:
      out += "return ";
      print_expr_at(s.expr(), kExpr, out);
      out += '\n';
      return;
    case StmtKind::Assign:
      out += s.name;
      out += ": ";
      out += s.annot.str();
      out += " = ";
      print_expr_at(s.value(), kExpr, out);
      out += '\n';
      return;
    case StmtKind::IndexAssign:
      print_child(s.target(), kPostfix, out);
      out += '[';
      print_expr_at(s.index(), kExpr, out);
      out += "] = ";
      print_expr_at(s.value(), kExpr, out);
      out += '\n';
      return;
    case StmtKind::Def: {
      out += "def ";
      out += s.name;
      out += '(';
      for (size_t i = 0; i < s.params.size(); ++i) {
        if (i) out += ", ";
        out += s.params[i].name;
        out += ": ";
        out += s.params[i].annot.str();
      }
      out += ") -> ";
      out += s.annot.str();
      out += ":\n";
      for (const auto& b : s.body) print_stmt_at(*b, indent + 1, out);
      return;
    }
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_expr_at(e, kExpr, out);
  return out;
}

std::string print_stmt(const Stmt& s, int indent) {
  std::string out;
  print_stmt_at(s, indent, out);
  return out;
}

std::string print_program(const Program& p) {
  std::string out;
  for (const ExternDecl& d : p.prelude) {
    out += "extern ";
    out += d.name;
    out += ": ";
    out += d.type.str();
    out += '\n';
  }
  for (const auto& s : p.stmts) print_stmt_at(*s, 0, out);
  return out;
}

}  // namespace typepycker
