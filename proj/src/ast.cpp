#include "typepycker/ast.hpp"

namespace typepycker {

ExprPtr Expr::clone() const {
  auto e = std::make_unique<Expr>(kind, span);
  e->id = id;
  e->int_value = int_value;
  e->bool_value = bool_value;
  e->name = name;
  e->binding = binding;
  e->static_type = static_type;
  e->cast_source = cast_source;
  e->cast_target = cast_target;
  e->cast_site = cast_site;
  e->kids.reserve(kids.size());
  for (const auto& k : kids) e->kids.push_back(k->clone());
  return e;
}

ExprPtr make_int(int64_t v, Span s) {
  auto e = std::make_unique<Expr>(ExprKind::IntLit, std::move(s));
  e->int_value = v;
  return e;
}

ExprPtr make_bool(bool v, Span s) {
  auto e = std::make_unique<Expr>(ExprKind::BoolLit, std::move(s));
  e->bool_value = v;
  return e;
}

ExprPtr make_var(std::string name, Span s) {
  auto e = std::make_unique<Expr>(ExprKind::Var, std::move(s));
  e->name = std::move(name);
  return e;
}

ExprPtr make_expr(ExprKind k, Span s, std::vector<ExprPtr> kids) {
  auto e = std::make_unique<Expr>(k, std::move(s));
  e->kids = std::move(kids);
  return e;
}

StmtPtr Stmt::clone() const {
  auto s = std::make_unique<Stmt>(kind, span);
  s->name = name;
  s->annot = annot;
  s->params = params;
  s->binding = binding;
  s->def_index = def_index;
  s->exprs.reserve(exprs.size());
  for (const auto& e : exprs) s->exprs.push_back(e->clone());
  s->body.reserve(body.size());
  for (const auto& b : body) s->body.push_back(b->clone());
  return s;
}

Program Program::clone() const {
  Program p;
  p.prelude = prelude;
  p.num_exprs = num_exprs;
  p.stmts.reserve(stmts.size());
  for (const auto& s : stmts) p.stmts.push_back(s->clone());
  return p;
}

namespace {

void renumber_expr(Expr& e, int& next) {
  e.id = next++;
  for (auto& k : e.kids) renumber_expr(*k, next);
}

void renumber_stmt(Stmt& s, int& next) {
  for (auto& e : s.exprs) renumber_expr(*e, next);
  for (auto& b : s.body) renumber_stmt(*b, next);
}

}  // namespace

void Program::renumber() {
  int next = 0;
  for (auto& s : stmts) renumber_stmt(*s, next);
  num_exprs = next;
}

const ExternDecl* Program::find_extern(const std::string& name) const {
  for (const auto& e : prelude)
    if (e.name == name) return &e;
  return nullptr;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case ExprKind::IntLit:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::BoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::Var:
      if (a.name != b.name) return false;
      break;
    case ExprKind::Cast:
      if (a.cast_target != b.cast_target || a.cast_source != b.cast_source) return false;
      break;
    default:
      break;
  }
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!structurally_equal(*a.kids[i], *b.kids[i])) return false;
  return true;
}

bool structurally_equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.name != b.name || !(a.annot == b.annot)) return false;
  if (a.params.size() != b.params.size() || a.exprs.size() != b.exprs.size() ||
      a.body.size() != b.body.size())
    return false;
  for (size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i].name != b.params[i].name || !(a.params[i].annot == b.params[i].annot))
      return false;
  for (size_t i = 0; i < a.exprs.size(); ++i)
    if (!structurally_equal(*a.exprs[i], *b.exprs[i])) return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!structurally_equal(*a.body[i], *b.body[i])) return false;
  return true;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.stmts.size() != b.stmts.size() || a.prelude.size() != b.prelude.size()) return false;
  for (size_t i = 0; i < a.prelude.size(); ++i)
    if (a.prelude[i].name != b.prelude[i].name || !(a.prelude[i].type == b.prelude[i].type))
      return false;
  for (size_t i = 0; i < a.stmts.size(); ++i)
    if (!structurally_equal(*a.stmts[i], *b.stmts[i])) return false;
  return true;
}

void for_each_expr(const Expr& e, const std::function<void(const Expr&)>& fn) {
  fn(e);
  for (const auto& k : e.kids) for_each_expr(*k, fn);
}

void for_each_expr(const Program& p, const std::function<void(const Expr&)>& fn) {
  for_each_stmt(p, [&](const Stmt& s) {
    for (const auto& e : s.exprs) for_each_expr(*e, fn);
  });
}

void for_each_stmt(const Program& p, const std::function<void(const Stmt&)>& fn) {
  std::function<void(const Stmt&)> walk = [&](const Stmt& s) {
    fn(s);
    for (const auto& b : s.body) walk(*b);
  };
  for (const auto& s : p.stmts) walk(*s);
}

}  // namespace typepycker
