#include "deob/interp.hpp"

#include <cassert>

#include "deob/wrap.hpp"

namespace deob {

const char* fault_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::None: return "none";
    case FaultKind::DivisionByZero: return "division-by-zero";
    case FaultKind::ModuloByZero: return "modulo-by-zero";
    case FaultKind::IndexOutOfBounds: return "index-out-of-bounds";
    case FaultKind::MissingMain: return "missing-main";
  }
  return "?";
}

namespace {

struct Fault {
  FaultKind kind;
  Span span;
};
struct OutOfFuel {};

// Name resolution is done once up front; every Var/Index/Decl/Assign/Call
// node gets a (kind, slot) pair indexed by node id so the hot loop never
// touches a string map.
enum class Res : int8_t { None, Local, GlobalScalar, GlobalArray, Function };

struct Interp {
  const Ast& ast;
  const std::map<std::string, Cfg>* cfgs = nullptr;  // instrumented mode

  std::vector<int64_t> global_scalars;
  std::vector<std::vector<int64_t>> global_arrays;

  struct FnInfo {
    const FunctionDecl* fn = nullptr;
    int frame_slots = 0;
    const Cfg* cfg = nullptr;
  };
  std::vector<FnInfo> fns;

  std::vector<Res> res_kind;
  std::vector<int> res_slot;

  int64_t fuel = 0;
  ExecOutput out;

  explicit Interp(const Ast& ast) : ast(ast) {
    res_kind.assign((size_t)ast.next_id + 1, Res::None);
    res_slot.assign((size_t)ast.next_id + 1, -1);

    std::map<std::string, std::pair<Res, int>> global_names;
    for (const auto& g : ast.globals) {
      if (g.is_array) {
        global_names[g.name] = {Res::GlobalArray, (int)global_arrays.size()};
        global_arrays.emplace_back((size_t)g.size, 0);
      } else {
        global_names[g.name] = {Res::GlobalScalar, (int)global_scalars.size()};
        global_scalars.push_back(g.has_init ? g.init : 0);
      }
    }
    std::map<std::string, int> fn_names;
    for (const auto& f : ast.functions) {
      fn_names[f.name] = (int)fns.size();
      fns.push_back(FnInfo{&f, 0, nullptr});
    }

    for (size_t i = 0; i < ast.functions.size(); i++) {
      const FunctionDecl& f = ast.functions[i];
      std::map<std::string, int> slots;
      for (const auto& p : f.params) slots[p.name] = (int)slots.size();
      collect_locals(f.body, slots);
      fns[i].frame_slots = (int)slots.size();

      auto resolve_name = [&](NodeId id, const std::string& name) {
        auto it = slots.find(name);
        if (it != slots.end()) {
          res_kind[id] = Res::Local;
          res_slot[id] = it->second;
          return;
        }
        auto git = global_names.find(name);
        assert(git != global_names.end());
        res_kind[id] = git->second.first;
        res_slot[id] = git->second.second;
      };
      resolve_stmts(f.body, resolve_name, fn_names);
    }
  }

  static void collect_locals(const std::vector<StmtPtr>& stmts, std::map<std::string, int>& slots) {
    for (const auto& s : stmts) {
      if (s->kind == Stmt::Kind::Decl && !slots.count(s->name)) slots[s->name] = (int)slots.size();
      collect_locals(s->body, slots);
      collect_locals(s->else_body, slots);
    }
  }

  template <typename ResolveName>
  void resolve_expr(const Expr& e, ResolveName& resolve_name,
                    const std::map<std::string, int>& fn_names) {
    switch (e.kind) {
      case Expr::Kind::Var:
      case Expr::Kind::Index:
        resolve_name(e.id, e.name);
        if (e.lhs) resolve_expr(*e.lhs, resolve_name, fn_names);
        break;
      case Expr::Kind::Call:
        res_kind[e.id] = Res::Function;
        res_slot[e.id] = fn_names.at(e.name);
        for (const auto& a : e.args) resolve_expr(*a, resolve_name, fn_names);
        break;
      case Expr::Kind::Unary:
        resolve_expr(*e.lhs, resolve_name, fn_names);
        break;
      case Expr::Kind::Binary:
        resolve_expr(*e.lhs, resolve_name, fn_names);
        resolve_expr(*e.rhs, resolve_name, fn_names);
        break;
      case Expr::Kind::IntLit:
        break;
    }
  }

  template <typename ResolveName>
  void resolve_stmts(const std::vector<StmtPtr>& stmts, ResolveName& resolve_name,
                     const std::map<std::string, int>& fn_names) {
    for (const auto& sp : stmts) {
      const Stmt& s = *sp;
      switch (s.kind) {
        case Stmt::Kind::Decl:
        case Stmt::Kind::Assign:
          resolve_name(s.id, s.name);
          break;
        case Stmt::Kind::IndexAssign:
          resolve_name(s.id, s.name);
          resolve_expr(*s.index, resolve_name, fn_names);
          break;
        default:
          break;
      }
      if (s.expr) resolve_expr(*s.expr, resolve_name, fn_names);
      resolve_stmts(s.body, resolve_name, fn_names);
      resolve_stmts(s.else_body, resolve_name, fn_names);
    }
  }

  //------------------------------------------------------------------------
  // Evaluation
  //------------------------------------------------------------------------

  void spend(int64_t n = 1) {
    fuel -= n;
    if (fuel < 0) throw OutOfFuel{};
  }

  int64_t eval(const Expr& e, std::vector<int64_t>& frame) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return e.value;
      case Expr::Kind::Var:
        return res_kind[e.id] == Res::Local ? frame[res_slot[e.id]]
                                            : global_scalars[res_slot[e.id]];
      case Expr::Kind::Index: {
        const auto& arr = global_arrays[res_slot[e.id]];
        int64_t idx = eval(*e.lhs, frame);
        if (idx < 0 || (size_t)idx >= arr.size())
          throw Fault{FaultKind::IndexOutOfBounds, e.span};
        return arr[(size_t)idx];
      }
      case Expr::Kind::Call:
        return call(res_slot[e.id], e, frame);
      case Expr::Kind::Unary: {
        int64_t v = eval(*e.lhs, frame);
        return e.uop == UnaryOp::Neg ? wrap_neg(v) : (v == 0 ? 1 : 0);
      }
      case Expr::Kind::Binary: {
        if (e.bop == BinaryOp::And) {
          if (eval(*e.lhs, frame) == 0) return 0;
          return eval(*e.rhs, frame) != 0 ? 1 : 0;
        }
        if (e.bop == BinaryOp::Or) {
          if (eval(*e.lhs, frame) != 0) return 1;
          return eval(*e.rhs, frame) != 0 ? 1 : 0;
        }
        int64_t a = eval(*e.lhs, frame);
        int64_t b = eval(*e.rhs, frame);
        switch (e.bop) {
          case BinaryOp::Add: return wrap_add(a, b);
          case BinaryOp::Sub: return wrap_sub(a, b);
          case BinaryOp::Mul: return wrap_mul(a, b);
          case BinaryOp::Div:
            if (b == 0) throw Fault{FaultKind::DivisionByZero, e.span};
            return wrap_div(a, b);
          case BinaryOp::Mod:
            if (b == 0) throw Fault{FaultKind::ModuloByZero, e.span};
            return wrap_mod(a, b);
          case BinaryOp::Lt: return a < b;
          case BinaryOp::Le: return a <= b;
          case BinaryOp::Gt: return a > b;
          case BinaryOp::Ge: return a >= b;
          case BinaryOp::Eq: return a == b;
          case BinaryOp::Ne: return a != b;
          default: return 0;
        }
      }
    }
    return 0;
  }

  int64_t call(int fn_index, const Expr& e, std::vector<int64_t>& caller_frame) {
    spend();
    const FnInfo& info = fns[(size_t)fn_index];
    std::vector<int64_t> frame((size_t)info.frame_slots, 0);
    for (size_t i = 0; i < e.args.size(); i++) frame[i] = eval(*e.args[i], caller_frame);
    return info.cfg ? exec_function_cfg(info, frame) : exec_function_ast(info, frame);
  }

  int64_t exec_function_ast(const FnInfo& info, std::vector<int64_t>& frame) {
    int64_t ret = 0;
    exec_stmts(info.fn->body, frame, ret);
    return ret;
  }

  // Returns true if a return statement fired.
  bool exec_stmts(const std::vector<StmtPtr>& stmts, std::vector<int64_t>& frame, int64_t& ret) {
    for (const auto& sp : stmts) {
      const Stmt& s = *sp;
      switch (s.kind) {
        case Stmt::Kind::Block:
          if (exec_stmts(s.body, frame, ret)) return true;
          break;
        case Stmt::Kind::If:
          spend();
          if (eval(*s.expr, frame) != 0) {
            if (exec_stmts(s.body, frame, ret)) return true;
          } else if (s.has_else) {
            if (exec_stmts(s.else_body, frame, ret)) return true;
          }
          break;
        case Stmt::Kind::While:
          while (true) {
            spend();
            if (eval(*s.expr, frame) == 0) break;
            if (exec_stmts(s.body, frame, ret)) return true;
          }
          break;
        case Stmt::Kind::Return:
          spend();
          ret = s.expr ? eval(*s.expr, frame) : 0;
          return true;
        default:
          exec_simple(s, frame);
          break;
      }
    }
    return false;
  }

  // Straight-line statements shared by the tree walker and the CFG walker.
  void exec_simple(const Stmt& s, std::vector<int64_t>& frame) {
    spend();
    switch (s.kind) {
      case Stmt::Kind::Decl: {
        int64_t v = s.expr ? eval(*s.expr, frame) : 0;
        frame[res_slot[s.id]] = v;
        break;
      }
      case Stmt::Kind::Assign: {
        int64_t v = eval(*s.expr, frame);
        if (res_kind[s.id] == Res::Local) frame[res_slot[s.id]] = v;
        else global_scalars[res_slot[s.id]] = v;
        break;
      }
      case Stmt::Kind::IndexAssign: {
        auto& arr = global_arrays[res_slot[s.id]];
        int64_t idx = eval(*s.index, frame);
        if (idx < 0 || (size_t)idx >= arr.size())
          throw Fault{FaultKind::IndexOutOfBounds, s.span};
        int64_t v = eval(*s.expr, frame);
        arr[(size_t)idx] = v;
        break;
      }
      case Stmt::Kind::Print: {
        int64_t v = eval(*s.expr, frame);
        out.stdout_text += std::to_string(v);
        out.stdout_text += '\n';
        break;
      }
      case Stmt::Kind::CallStmt:
        eval(*s.expr, frame);
        break;
      default:
        assert(false && "not a straight-line statement");
    }
  }

  int64_t exec_function_cfg(const FnInfo& info, std::vector<int64_t>& frame) {
    const Cfg& g = *info.cfg;
    auto& counts = out.coverage[info.fn->name];
    int block = g.entry;
    while (true) {
      spend();
      counts[block]++;
      const BasicBlock& bb = g.blocks.at(block);
      for (const Stmt* s : bb.stmts) {
        if (s->kind == Stmt::Kind::Return) {
          spend();
          return s->expr ? eval(*s->expr, frame) : 0;
        }
        exec_simple(*s, frame);
      }
      if (bb.guard) {
        bool taken = eval(*bb.guard, frame) != 0;
        GuardKind want = taken ? GuardKind::CondTrue : GuardKind::CondFalse;
        int next = -1;
        for (const auto& e : g.edges)
          if (e.from == block && e.kind == want) {
            next = e.to;
            break;
          }
        assert(next != -1 && "guarded block missing branch edge");
        block = next;
      } else {
        int next = -1;
        for (const auto& e : g.edges)
          if (e.from == block && e.kind == GuardKind::Always) {
            next = e.to;
            break;
          }
        if (next == -1) return 0;  // fell off the end
        block = next;
      }
    }
  }

  ExecOutput execute(int64_t step_limit) {
    fuel = step_limit;
    const FunctionDecl* main_fn = ast.find_function("main");
    if (!main_fn) {
      out.status = RunStatus::RuntimeError;
      out.fault = FaultKind::MissingMain;
      return std::move(out);
    }
    size_t main_index = 0;
    for (size_t i = 0; i < fns.size(); i++)
      if (fns[i].fn == main_fn) main_index = i;

    if (cfgs) {
      for (auto& info : fns) {
        auto it = cfgs->find(info.fn->name);
        if (it != cfgs->end()) info.cfg = &it->second;
      }
    }

    try {
      const FnInfo& info = fns[main_index];
      std::vector<int64_t> frame((size_t)info.frame_slots, 0);
      if (info.cfg) exec_function_cfg(info, frame);
      else exec_function_ast(info, frame);
      out.status = RunStatus::Ok;
    } catch (const Fault& f) {
      out.status = RunStatus::RuntimeError;
      out.fault = f.kind;
      out.fault_span = f.span;
    } catch (const OutOfFuel&) {
      out.status = RunStatus::StepLimit;
    }
    out.steps = step_limit - fuel;
    return std::move(out);
  }
};

}  // namespace

ExecOutput run(const Ast& ast, int64_t step_limit) {
  Interp interp(ast);
  return interp.execute(step_limit);
}

bool outputs_equal(const ExecOutput& a, const ExecOutput& b) {
  return a.ok() && b.ok() && a.stdout_text == b.stdout_text;
}

ExecOutput run_instrumented(const Ast& ast, const std::map<std::string, Cfg>& cfgs,
                            int64_t step_limit) {
  Interp interp(ast);
  interp.cfgs = &cfgs;
  return interp.execute(step_limit);
}

}  // namespace deob
