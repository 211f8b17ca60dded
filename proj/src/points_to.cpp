#include "typepycker/points_to.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace typepycker {
namespace {

// Node space: bindings, then non-Var expressions, then one return node
// per def. Var occurrences share their binding's node.
class Analysis {
 public:
  explicit Analysis(const ResolvedProgram& rp) : rp_(rp) {
    num_bindings_ = static_cast<int>(rp.bindings.size());
    num_exprs_ = rp.program.num_exprs;
    int total = num_bindings_ + num_exprs_ + static_cast<int>(rp.defs.size());
    values_.resize(static_cast<size_t>(total));
    contents_.resize(static_cast<size_t>(total));
    copy_out_.resize(static_cast<size_t>(total));
    content_in_out_.resize(static_cast<size_t>(total));
    content_out_out_.resize(static_cast<size_t>(total));
    watchers_.resize(static_cast<size_t>(total));
    in_work_.resize(static_cast<size_t>(total), false);
  }

  CalleeMap run() {
    for (const BindingInfo& b : rp_.bindings)
      if (b.kind == BindingKind::FunctionName || b.kind == BindingKind::Extern)
        add_value(b.id, b.id);

    for (const auto& s : rp_.program.stmts) collect_stmt(*s, -1);

    while (!work_.empty()) {
      int n = work_.front();
      work_.pop_front();
      in_work_[static_cast<size_t>(n)] = false;
      flow_from(n);
    }

    CalleeMap cm;
    cm.sites = sites_;
    for (const CallSite& cs : calls_) {
      std::vector<int> t(values_[static_cast<size_t>(cs.callee_node)].begin(),
                         values_[static_cast<size_t>(cs.callee_node)].end());
      cm.targets[cs.expr_id] = std::move(t);
    }
    return cm;
  }

 private:
  struct CallSite {
    int expr_id;
    int callee_node;
    std::vector<int> arg_nodes;
    int result_node;
    std::set<int> expanded;
  };

  int node_of_expr(const Expr& e) const {
    if (e.kind == ExprKind::Var) return e.binding;
    return num_bindings_ + e.id;
  }
  int return_node(int def_index) const { return num_bindings_ + num_exprs_ + def_index; }

  void schedule(int n) {
    if (!in_work_[static_cast<size_t>(n)]) {
      in_work_[static_cast<size_t>(n)] = true;
      work_.push_back(n);
    }
  }

  bool add_value(int n, int target) {
    if (values_[static_cast<size_t>(n)].insert(target).second) {
      schedule(n);
      return true;
    }
    return false;
  }
  bool add_content(int n, int target) {
    if (contents_[static_cast<size_t>(n)].insert(target).second) {
      schedule(n);
      return true;
    }
    return false;
  }

  void add_copy(int from, int to) {
    copy_out_[static_cast<size_t>(from)].push_back(to);
    for (int t : values_[static_cast<size_t>(from)]) add_value(to, t);
    for (int t : contents_[static_cast<size_t>(from)]) add_content(to, t);
  }
  void add_content_in(int from, int to) {
    content_in_out_[static_cast<size_t>(from)].push_back(to);
    for (int t : values_[static_cast<size_t>(from)]) add_content(to, t);
    for (int t : contents_[static_cast<size_t>(from)]) add_content(to, t);
  }
  void add_content_out(int from, int to) {
    content_out_out_[static_cast<size_t>(from)].push_back(to);
    for (int t : contents_[static_cast<size_t>(from)]) {
      add_value(to, t);
      add_content(to, t);
    }
  }

  void flow_from(int n) {
    const auto& vals = values_[static_cast<size_t>(n)];
    const auto& cont = contents_[static_cast<size_t>(n)];
    for (int to : copy_out_[static_cast<size_t>(n)]) {
      for (int t : vals) add_value(to, t);
      for (int t : cont) add_content(to, t);
    }
    for (int to : content_in_out_[static_cast<size_t>(n)]) {
      for (int t : vals) add_content(to, t);
      for (int t : cont) add_content(to, t);
    }
    for (int to : content_out_out_[static_cast<size_t>(n)]) {
      for (int t : cont) {
        add_value(to, t);
        add_content(to, t);
      }
    }
    for (size_t cs_index : watchers_[static_cast<size_t>(n)]) expand_call(calls_[cs_index]);
  }

  // Wire argument/return copies for every Def target the callee may hold.
  void expand_call(CallSite& cs) {
    for (int target : values_[static_cast<size_t>(cs.callee_node)]) {
      if (!cs.expanded.insert(target).second) continue;
      const BindingInfo& b = rp_.binding(target);
      if (b.kind != BindingKind::FunctionName) continue;  // externs are opaque
      const Stmt& def = rp_.def(b.def_index);
      size_t n = std::min(cs.arg_nodes.size(), def.params.size());
      for (size_t i = 0; i < n; ++i) add_copy(cs.arg_nodes[i], def.params[i].binding);
      add_copy(return_node(b.def_index), cs.result_node);
    }
  }

  void collect_stmt(const Stmt& s, int def_index) {
    switch (s.kind) {
      case StmtKind::ExprStmt:
        collect_expr(*s.exprs[0]);
        return;
      case StmtKind::Return:
        collect_expr(*s.exprs[0]);
        add_copy(node_of_expr(*s.exprs[0]), return_node(def_index));
        return;
      case StmtKind::Assign:
        collect_expr(*s.exprs[0]);
        add_copy(node_of_expr(*s.exprs[0]), s.binding);
        return;
      case StmtKind::IndexAssign:
        for (const auto& e : s.exprs) collect_expr(*e);
        add_content_in(node_of_expr(*s.exprs[2]), node_of_expr(*s.exprs[0]));
        return;
      case StmtKind::Def:
        for (const auto& b : s.body) collect_stmt(*b, s.def_index);
        return;
    }
  }

  void collect_expr(const Expr& e) {
    for (const auto& k : e.kids) collect_expr(*k);
    switch (e.kind) {
      case ExprKind::If:
        add_copy(node_of_expr(e.then_branch()), node_of_expr(e));
        add_copy(node_of_expr(e.else_branch()), node_of_expr(e));
        return;
      case ExprKind::ArrayLit:
        for (const auto& k : e.kids) add_content_in(node_of_expr(*k), node_of_expr(e));
        return;
      case ExprKind::Index:
        add_content_out(node_of_expr(e.target()), node_of_expr(e));
        return;
      case ExprKind::Call: {
        CallSite cs;
        cs.expr_id = e.id;
        cs.callee_node = node_of_expr(e.callee());
        for (size_t i = 0; i < e.arg_count(); ++i) cs.arg_nodes.push_back(node_of_expr(e.arg(i)));
        cs.result_node = node_of_expr(e);
        sites_.push_back({e.id, e.span});
        calls_.push_back(std::move(cs));
        watchers_[static_cast<size_t>(calls_.back().callee_node)].push_back(calls_.size() - 1);
        expand_call(calls_.back());
        return;
      }
      default:
        return;
    }
  }

  const ResolvedProgram& rp_;
  int num_bindings_ = 0;
  int num_exprs_ = 0;
  std::vector<std::set<int>> values_;
  std::vector<std::set<int>> contents_;
  std::vector<std::vector<int>> copy_out_;
  std::vector<std::vector<int>> content_in_out_;
  std::vector<std::vector<int>> content_out_out_;
  std::vector<std::vector<size_t>> watchers_;
  std::vector<CallSite> calls_;
  std::vector<CallSiteInfo> sites_;
  std::deque<int> work_;
  std::vector<bool> in_work_;
};

}  // namespace

CalleeMap points_to(const ResolvedProgram& rp) {
  Analysis a(rp);
  return a.run();
}

}  // namespace typepycker
