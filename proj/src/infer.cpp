#include "typepycker/infer.hpp"

#include <memory>
#include <set>

namespace typepycker {
namespace {

struct Term;
using TermPtr = std::shared_ptr<Term>;

struct Term {
  enum K { TVar, Absorb, IntT, BoolT, ArrayT, FunT } k;
  int var = -1;                // TVar
  std::vector<TermPtr> sub;    // ArrayT: {elem}; FunT: {params..., ret}
};

TermPtr mk(Term::K k) { return std::make_shared<Term>(Term{k, -1, {}}); }
TermPtr mk_var(int v) { return std::make_shared<Term>(Term{Term::TVar, v, {}}); }

struct Constraint {
  TermPtr a, b;
};

struct Group {
  std::vector<Constraint> cs;
  std::vector<int> vars;  // all variable ids occurring in the terms
  bool dead = false;
};

void collect_vars(const TermPtr& t, std::set<int>& out) {
  if (t->k == Term::TVar) out.insert(t->var);
  for (const auto& s : t->sub) collect_vars(s, out);
}

class Engine {
 public:
  Engine(const ResolvedProgram& rp, const CalleeMap& cm) : rp_(rp), cm_(cm) {}

  TypeTable run() {
    build_slots();
    for (const auto& s : rp_.program.stmts) collect_stmt(*s, -1);
    solve();
    return build_table();
  }

 private:
  // --- slot terms -------------------------------------------------------

  int fresh_var() {
    int v = num_vars_++;
    return v;
  }

  // Unknown positions in programmer annotations are flexible (fresh
  // variables); concrete positions are rigid.
  TermPtr flexible_term(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Unknown:
        return mk_var(fresh_var());
      case Type::Kind::Int:
        return mk(Term::IntT);
      case Type::Kind::Bool:
        return mk(Term::BoolT);
      case Type::Kind::Array: {
        auto a = mk(Term::ArrayT);
        a->sub.push_back(flexible_term(t.elem()));
        return a;
      }
      case Type::Kind::Function: {
        auto f = mk(Term::FunT);
        for (size_t i = 0; i < t.param_count(); ++i) f->sub.push_back(flexible_term(t.param(i)));
        f->sub.push_back(flexible_term(t.ret()));
        return f;
      }
    }
    return mk_var(fresh_var());
  }

  // Unknown positions in extern signatures absorb anything.
  TermPtr rigid_term(const Type& t) {
    switch (t.kind()) {
      case Type::Kind::Unknown:
        return mk(Term::Absorb);
      case Type::Kind::Int:
        return mk(Term::IntT);
      case Type::Kind::Bool:
        return mk(Term::BoolT);
      case Type::Kind::Array: {
        auto a = mk(Term::ArrayT);
        a->sub.push_back(rigid_term(t.elem()));
        return a;
      }
      case Type::Kind::Function: {
        auto f = mk(Term::FunT);
        for (size_t i = 0; i < t.param_count(); ++i) f->sub.push_back(rigid_term(t.param(i)));
        f->sub.push_back(rigid_term(t.ret()));
        return f;
      }
    }
    return mk(Term::Absorb);
  }

  void build_slots() {
    binding_slot_.resize(rp_.bindings.size());
    return_slot_.resize(rp_.defs.size());
    expr_slot_.resize(static_cast<size_t>(rp_.program.num_exprs));

    for (size_t d = 0; d < rp_.defs.size(); ++d)
      return_slot_[d] = flexible_term(rp_.defs[d]->annot);

    for (const BindingInfo& b : rp_.bindings) {
      switch (b.kind) {
        case BindingKind::LocalVar:
        case BindingKind::Param:
          binding_slot_[static_cast<size_t>(b.id)] = flexible_term(b.declared);
          break;
        case BindingKind::Extern:
          binding_slot_[static_cast<size_t>(b.id)] = rigid_term(b.declared);
          break;
        case BindingKind::FunctionName:
          break;  // built below, once params exist
      }
    }
    // Function slots share structure with their param and return slots,
    // so params must be created first. Param bindings are created during
    // resolution after the def's name binding; walk defs here.
    for (size_t d = 0; d < rp_.defs.size(); ++d) {
      const Stmt& def = *rp_.defs[d];
      auto f = mk(Term::FunT);
      for (const Param& p : def.params) {
        if (!binding_slot_[static_cast<size_t>(p.binding)])
          binding_slot_[static_cast<size_t>(p.binding)] = flexible_term(p.annot);
        f->sub.push_back(binding_slot_[static_cast<size_t>(p.binding)]);
      }
      f->sub.push_back(return_slot_[d]);
      binding_slot_[static_cast<size_t>(def.binding)] = f;
    }

    for_each_expr(rp_.program, [&](const Expr& e) {
      TermPtr t;
      switch (e.kind) {
        case ExprKind::IntLit:
          t = mk(Term::IntT);
          break;
        case ExprKind::BoolLit:
          t = mk(Term::BoolT);
          break;
        case ExprKind::Var:
          t = binding_slot_[static_cast<size_t>(e.binding)];
          break;
        default:
          t = mk_var(fresh_var());
          break;
      }
      expr_slot_[static_cast<size_t>(e.id)] = std::move(t);
    });
  }

  TermPtr term_of(const Expr& e) { return expr_slot_[static_cast<size_t>(e.id)]; }

  // --- constraint collection (AST order) --------------------------------

  Group& open_group() {
    groups_.emplace_back();
    return groups_.back();
  }

  static void add(Group& g, TermPtr a, TermPtr b) { g.cs.push_back({std::move(a), std::move(b)}); }

  void collect_stmt(const Stmt& s, int def_index) {
    switch (s.kind) {
      case StmtKind::ExprStmt:
        collect_expr(*s.exprs[0]);
        return;
      case StmtKind::Return: {
        collect_expr(*s.exprs[0]);
        Group& g = open_group();
        add(g, term_of(*s.exprs[0]), return_slot_[static_cast<size_t>(def_index)]);
        return;
      }
      case StmtKind::Assign: {
        collect_expr(*s.exprs[0]);
        Group& g = open_group();
        add(g, binding_slot_[static_cast<size_t>(s.binding)], term_of(*s.exprs[0]));
        return;
      }
      case StmtKind::IndexAssign: {
        for (const auto& e : s.exprs) collect_expr(*e);
        Group& g = open_group();
        auto arr = mk(Term::ArrayT);
        auto elem = mk_var(fresh_var());
        arr->sub.push_back(elem);
        add(g, term_of(*s.exprs[0]), arr);
        add(g, term_of(*s.exprs[1]), mk(Term::IntT));
        add(g, term_of(*s.exprs[2]), elem);
        return;
      }
      case StmtKind::Def:
        for (const auto& b : s.body) collect_stmt(*b, s.def_index);
        return;
    }
  }

  void collect_expr(const Expr& e) {
    for (const auto& k : e.kids) collect_expr(*k);
    switch (e.kind) {
      case ExprKind::Add: {
        Group& g = open_group();
        add(g, term_of(e.lhs()), mk(Term::IntT));
        add(g, term_of(e.rhs()), mk(Term::IntT));
        add(g, term_of(e), mk(Term::IntT));
        return;
      }
      case ExprKind::If: {
        Group& g = open_group();
        add(g, term_of(e.cond()), mk(Term::BoolT));
        add(g, term_of(e), term_of(e.then_branch()));
        add(g, term_of(e), term_of(e.else_branch()));
        return;
      }
      case ExprKind::ArrayLit: {
        Group& g = open_group();
        auto arr = mk(Term::ArrayT);
        auto elem = mk_var(fresh_var());
        arr->sub.push_back(elem);
        add(g, term_of(e), arr);
        for (const auto& k : e.kids) add(g, term_of(*k), elem);
        return;
      }
      case ExprKind::Index: {
        Group& g = open_group();
        auto arr = mk(Term::ArrayT);
        auto elem = mk_var(fresh_var());
        arr->sub.push_back(elem);
        add(g, term_of(e.target()), arr);
        add(g, term_of(e.index()), mk(Term::IntT));
        add(g, term_of(e), elem);
        return;
      }
      case ExprKind::Call: {
        // One group per potential target, so a conflicting target only
        // degrades the variables it touches.
        for (int target : cm_.targets_of(e.id)) {
          const BindingInfo& b = rp_.binding(target);
          if (b.kind == BindingKind::FunctionName) {
            const Stmt& def = rp_.def(b.def_index);
            Group& g = open_group();
            size_t n = std::min(e.arg_count(), def.params.size());
            for (size_t i = 0; i < n; ++i)
              add(g, term_of(e.arg(i)), binding_slot_[static_cast<size_t>(def.params[i].binding)]);
            add(g, term_of(e), return_slot_[static_cast<size_t>(b.def_index)]);
          } else if (b.kind == BindingKind::Extern &&
                     b.declared.kind() == Type::Kind::Function) {
            Group& g = open_group();
            size_t n = std::min(e.arg_count(), b.declared.param_count());
            for (size_t i = 0; i < n; ++i) add(g, term_of(e.arg(i)), rigid_term(b.declared.param(i)));
            add(g, term_of(e), rigid_term(b.declared.ret()));
          }
        }
        return;
      }
      default:
        return;
    }
  }

  // --- solving -----------------------------------------------------------

  int find(int v) {
    while (parent_[static_cast<size_t>(v)] != v) {
      parent_[static_cast<size_t>(v)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(v)])];
      v = parent_[static_cast<size_t>(v)];
    }
    return v;
  }

  // Follows variable bindings at the root; poisoned variables read as
  // absorbing.
  TermPtr shallow(TermPtr t) {
    while (t->k == Term::TVar) {
      int r = find(t->var);
      if (poisoned_.count(r) || poisoned_.count(t->var)) return mk(Term::Absorb);
      TermPtr b = bound_[static_cast<size_t>(r)];
      if (!b) {
        if (r == t->var) return t;
        return mk_var(r);
      }
      t = b;
    }
    return t;
  }

  bool occurs(int v, const TermPtr& raw) {
    TermPtr t = shallow(raw);
    if (t->k == Term::TVar) return find(t->var) == v;
    for (const auto& s : t->sub)
      if (occurs(v, s)) return true;
    return false;
  }

  enum class UnifyResult { Ok, Conflict, Occurs };

  UnifyResult unify(const TermPtr& ra, const TermPtr& rb, int* occurs_var) {
    TermPtr a = shallow(ra);
    TermPtr b = shallow(rb);
    if (a->k == Term::Absorb || b->k == Term::Absorb) return UnifyResult::Ok;
    if (a->k == Term::TVar && b->k == Term::TVar) {
      // shallow() only surfaces unbound roots, so a plain union suffices.
      int x = find(a->var), y = find(b->var);
      if (x != y) parent_[static_cast<size_t>(y)] = x;
      return UnifyResult::Ok;
    }
    if (a->k == Term::TVar || b->k == Term::TVar) {
      const TermPtr& var_t = a->k == Term::TVar ? a : b;
      const TermPtr& other = a->k == Term::TVar ? b : a;
      int r = find(var_t->var);
      if (occurs(r, other)) {
        *occurs_var = r;
        return UnifyResult::Occurs;
      }
      bound_[static_cast<size_t>(r)] = other;
      return UnifyResult::Ok;
    }
    if (a->k != b->k) return UnifyResult::Conflict;
    switch (a->k) {
      case Term::IntT:
      case Term::BoolT:
        return UnifyResult::Ok;
      case Term::ArrayT:
        return unify(a->sub[0], b->sub[0], occurs_var);
      case Term::FunT: {
        if (a->sub.size() != b->sub.size()) return UnifyResult::Conflict;
        for (size_t i = 0; i < a->sub.size(); ++i) {
          UnifyResult r = unify(a->sub[i], b->sub[i], occurs_var);
          if (r != UnifyResult::Ok) return r;
        }
        return UnifyResult::Ok;
      }
      default:
        return UnifyResult::Conflict;
    }
  }

  // Runs unification passes; a failing group poisons its variables and
  // forces a restart, so conflicts degrade to Unknown instead of
  // rejecting the program.
  void solve() {
    for (Group& g : groups_) {
      std::set<int> vs;
      for (const Constraint& c : g.cs) {
        collect_vars(c.a, vs);
        collect_vars(c.b, vs);
      }
      g.vars.assign(vs.begin(), vs.end());
    }

    while (true) {
      parent_.resize(static_cast<size_t>(num_vars_));
      bound_.assign(static_cast<size_t>(num_vars_), nullptr);
      for (int i = 0; i < num_vars_; ++i) parent_[static_cast<size_t>(i)] = i;

      bool restart = false;
      for (Group& g : groups_) {
        if (g.dead) continue;
        for (const Constraint& c : g.cs) {
          int occ = -1;
          UnifyResult r = unify(c.a, c.b, &occ);
          if (r == UnifyResult::Ok) continue;
          if (r == UnifyResult::Occurs) {
            poisoned_.insert(occ);
            restart = true;
            break;
          }
          bool any_new = false;
          for (int v : g.vars) any_new |= poisoned_.insert(v).second;
          if (!any_new) g.dead = true;
          restart = true;
          break;
        }
        if (restart) break;
      }
      if (!restart) return;
    }
  }

  Type resolve(const TermPtr& raw) {
    TermPtr t = shallow(raw);
    switch (t->k) {
      case Term::TVar:
      case Term::Absorb:
        return Type::unknown();
      case Term::IntT:
        return Type::integer();
      case Term::BoolT:
        return Type::boolean();
      case Term::ArrayT:
        return Type::array(resolve(t->sub[0]));
      case Term::FunT: {
        std::vector<Type> params;
        for (size_t i = 0; i + 1 < t->sub.size(); ++i) params.push_back(resolve(t->sub[i]));
        return Type::function(std::move(params), resolve(t->sub.back()));
      }
    }
    return Type::unknown();
  }

  // inferred = given with Unknown positions filled from the solution.
  static Type overlay(const Type& given, const Type& solved) {
    if (given.is_unknown()) return solved;
    if (given.kind() != solved.kind()) return given;
    switch (given.kind()) {
      case Type::Kind::Array:
        return Type::array(overlay(given.elem(), solved.elem()));
      case Type::Kind::Function: {
        if (given.param_count() != solved.param_count()) return given;
        std::vector<Type> params;
        for (size_t i = 0; i < given.param_count(); ++i)
          params.push_back(overlay(given.param(i), solved.param(i)));
        return Type::function(std::move(params), overlay(given.ret(), solved.ret()));
      }
      default:
        return given;
    }
  }

  TypeTable build_table() {
    TypeTable t;
    t.binding_given.reserve(rp_.bindings.size());
    t.binding_inferred.reserve(rp_.bindings.size());
    for (const BindingInfo& b : rp_.bindings) {
      t.binding_given.push_back(b.declared);
      t.binding_inferred.push_back(overlay(b.declared, resolve(binding_slot_[static_cast<size_t>(b.id)])));
    }
    t.return_given.reserve(rp_.defs.size());
    t.return_inferred.reserve(rp_.defs.size());
    for (size_t d = 0; d < rp_.defs.size(); ++d) {
      t.return_given.push_back(rp_.defs[d]->annot);
      t.return_inferred.push_back(overlay(rp_.defs[d]->annot, resolve(return_slot_[d])));
    }
    t.expr_given.assign(static_cast<size_t>(rp_.program.num_exprs), Type::unknown());
    t.expr_inferred.assign(static_cast<size_t>(rp_.program.num_exprs), Type::unknown());
    for_each_expr(rp_.program, [&](const Expr& e) {
      Type given = Type::unknown();
      switch (e.kind) {
        case ExprKind::IntLit:
          given = Type::integer();
          break;
        case ExprKind::BoolLit:
          given = Type::boolean();
          break;
        case ExprKind::ArrayLit:
          given = Type::array(Type::unknown());
          break;
        case ExprKind::Var:
          given = rp_.binding(e.binding).declared;
          break;
        default:
          break;
      }
      t.expr_given[static_cast<size_t>(e.id)] = given;
      t.expr_inferred[static_cast<size_t>(e.id)] =
          overlay(given, resolve(expr_slot_[static_cast<size_t>(e.id)]));
    });
    return t;
  }

  const ResolvedProgram& rp_;
  const CalleeMap& cm_;

  int num_vars_ = 0;
  std::vector<TermPtr> binding_slot_;
  std::vector<TermPtr> return_slot_;
  std::vector<TermPtr> expr_slot_;
  std::vector<Group> groups_;

  std::vector<int> parent_;
  std::vector<TermPtr> bound_;
  std::set<int> poisoned_;
};

}  // namespace

TypeTable infer_types(const ResolvedProgram& rp, const CalleeMap& cm) {
  Engine e(rp, cm);
  return e.run();
}

}  // namespace typepycker
