#include "typepycker/resolve.hpp"

#include <map>
#include <memory>

namespace typepycker {

const char* binding_kind_name(BindingKind k) {
  switch (k) {
    case BindingKind::LocalVar: return "var";
    case BindingKind::Param: return "param";
    case BindingKind::FunctionName: return "function";
    case BindingKind::Extern: return "extern";
  }
  return "?";
}

namespace {

struct Scope {
  std::map<std::string, int> names;
  Scope* parent = nullptr;

  int lookup(const std::string& name) const {
    for (const Scope* s = this; s; s = s->parent) {
      auto it = s->names.find(name);
      if (it != s->names.end()) return it->second;
    }
    return -1;
  }
};

class Resolver {
 public:
  ResolvedProgram run(Program p) {
    out_.program = std::move(p);
    Program& prog = out_.program;

    Scope externs;
    for (const ExternDecl& d : prog.prelude) {
      int id = add_binding(BindingKind::Extern, d.name, d.span, d.type, -1);
      externs.names[d.name] = id;
    }

    Scope module;
    module.parent = &externs;
    collect_scope(prog.stmts, module, /*owner_def=*/-1);
    for (auto& s : prog.stmts) resolve_stmt(*s, module, -1);

    return std::move(out_);
  }

 private:
  int add_binding(BindingKind kind, const std::string& name, const Span& span,
                  Type declared, int owner_def) {
    BindingInfo b;
    b.id = static_cast<int>(out_.bindings.size());
    b.kind = kind;
    b.name = name;
    b.decl_span = span;
    b.declared = std::move(declared);
    b.owner_def = owner_def;
    out_.bindings.push_back(std::move(b));
    return out_.bindings.back().id;
  }

  // Names assigned or defined directly in this statement list become
  // bindings of the scope. Nested def bodies get their own scope later.
  void collect_scope(std::vector<StmtPtr>& stmts, Scope& scope, int owner_def) {
    for (auto& sp : stmts) {
      Stmt& s = *sp;
      if (s.kind == StmtKind::Assign) {
        auto it = scope.names.find(s.name);
        if (it == scope.names.end()) {
          int id = add_binding(BindingKind::LocalVar, s.name, s.span, Type::unknown(), owner_def);
          out_.bindings[id].first_assign = &s;
          scope.names[s.name] = id;
        }
      } else if (s.kind == StmtKind::Def) {
        // Declared function type from its annotations.
        std::vector<Type> params;
        for (const Param& p : s.params) params.push_back(p.annot);
        Type fn_type = Type::function(std::move(params), s.annot);
        int id = add_binding(BindingKind::FunctionName, s.name, s.span, std::move(fn_type), owner_def);
        s.def_index = static_cast<int>(out_.defs.size());
        s.binding = id;
        out_.bindings[id].def_index = s.def_index;
        out_.defs.push_back(&s);
        scope.names[s.name] = id;
      }
    }
  }

  void resolve_stmt(Stmt& s, Scope& scope, int owner_def) {
    switch (s.kind) {
      case StmtKind::ExprStmt:
      case StmtKind::Return:
        resolve_expr(*s.exprs[0], scope);
        return;
      case StmtKind::Assign: {
        int id = scope.lookup(s.name);
        s.binding = id;  // collected above; lookup cannot fail for assigns in this scope
        record_var_annotation(s);
        resolve_expr(*s.exprs[0], scope);
        return;
      }
      case StmtKind::IndexAssign:
        for (auto& e : s.exprs) resolve_expr(*e, scope);
        return;
      case StmtKind::Def: {
        Scope fn_scope;
        fn_scope.parent = &scope;
        for (size_t i = 0; i < s.params.size(); ++i) {
          Param& p = s.params[i];
          int id = add_binding(BindingKind::Param, p.name, p.span, p.annot, s.def_index);
          out_.bindings[id].param_index = static_cast<int>(i);
          p.binding = id;
          fn_scope.names[p.name] = id;
        }
        collect_scope(s.body, fn_scope, s.def_index);
        for (auto& b : s.body) resolve_stmt(*b, fn_scope, s.def_index);
        return;
      }
    }
  }

  void resolve_expr(Expr& e, Scope& scope) {
    if (e.kind == ExprKind::Var) {
      int id = scope.lookup(e.name);
      if (id < 0)
        throw CompileError("UnboundIdentifier", e.span, "unbound identifier '" + e.name + "'");
      e.binding = id;
    }
    for (auto& k : e.kids) resolve_expr(*k, scope);
  }

  // A variable's declared type is its first non-* annotation. Two
  // different concrete annotations on the same variable conflict.
  void record_var_annotation(const Stmt& s) {
    BindingInfo& b = out_.bindings[static_cast<size_t>(s.binding)];
    if (s.annot.is_unknown()) return;
    if (b.declared.is_unknown()) {
      b.declared = s.annot;
    } else if (!(b.declared == s.annot)) {
      throw CompileError("AnnotationMismatch", s.span,
                         "'" + s.name + "' already annotated as " + b.declared.str());
    }
  }

  ResolvedProgram out_;
};

}  // namespace

ResolvedProgram resolve_names(Program p) {
  Resolver r;
  return r.run(std::move(p));
}

}  // namespace typepycker
