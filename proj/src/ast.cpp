#include "deob/ast.hpp"

#include <map>
#include <set>

#include "deob/errors.hpp"

namespace deob {

const FunctionDecl* Ast::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

FunctionDecl* Ast::find_function(const std::string& name) {
  for (auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

ExprPtr clone_expr(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->kind = e.kind;
  out->id = e.id;
  out->span = e.span;
  out->value = e.value;
  out->name = e.name;
  out->uop = e.uop;
  out->bop = e.bop;
  if (e.lhs) out->lhs = clone_expr(*e.lhs);
  if (e.rhs) out->rhs = clone_expr(*e.rhs);
  out->args.reserve(e.args.size());
  for (const auto& a : e.args) out->args.push_back(clone_expr(*a));
  return out;
}

StmtPtr clone_stmt(const Stmt& s) {
  auto out = std::make_unique<Stmt>();
  out->kind = s.kind;
  out->id = s.id;
  out->span = s.span;
  out->name = s.name;
  if (s.expr) out->expr = clone_expr(*s.expr);
  if (s.index) out->index = clone_expr(*s.index);
  out->body.reserve(s.body.size());
  for (const auto& c : s.body) out->body.push_back(clone_stmt(*c));
  out->else_body.reserve(s.else_body.size());
  for (const auto& c : s.else_body) out->else_body.push_back(clone_stmt(*c));
  out->has_else = s.has_else;
  return out;
}

Ast clone_ast(const Ast& a) {
  Ast out;
  out.globals = a.globals;
  out.functions.reserve(a.functions.size());
  for (const auto& f : a.functions) {
    FunctionDecl nf;
    nf.name = f.name;
    nf.returns_int = f.returns_int;
    nf.params = f.params;
    nf.id = f.id;
    nf.span = f.span;
    nf.body.reserve(f.body.size());
    for (const auto& s : f.body) nf.body.push_back(clone_stmt(*s));
    out.functions.push_back(std::move(nf));
  }
  out.next_id = a.next_id;
  return out;
}

bool equal_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLit:
      return a.value == b.value;
    case Expr::Kind::Var:
      return a.name == b.name;
    case Expr::Kind::Index:
      return a.name == b.name && equal_expr(*a.lhs, *b.lhs);
    case Expr::Kind::Call: {
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); i++)
        if (!equal_expr(*a.args[i], *b.args[i])) return false;
      return true;
    }
    case Expr::Kind::Unary:
      return a.uop == b.uop && equal_expr(*a.lhs, *b.lhs);
    case Expr::Kind::Binary:
      return a.bop == b.bop && equal_expr(*a.lhs, *b.lhs) && equal_expr(*a.rhs, *b.rhs);
  }
  return false;
}

static bool equal_stmt_list(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); i++)
    if (!equal_stmt(*a[i], *b[i])) return false;
  return true;
}

bool equal_stmt(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  if (a.name != b.name) return false;
  if ((a.expr == nullptr) != (b.expr == nullptr)) return false;
  if (a.expr && !equal_expr(*a.expr, *b.expr)) return false;
  if ((a.index == nullptr) != (b.index == nullptr)) return false;
  if (a.index && !equal_expr(*a.index, *b.index)) return false;
  if (a.has_else != b.has_else) return false;
  return equal_stmt_list(a.body, b.body) && equal_stmt_list(a.else_body, b.else_body);
}

bool equal_ast(const Ast& a, const Ast& b) {
  if (a.globals.size() != b.globals.size()) return false;
  for (size_t i = 0; i < a.globals.size(); i++) {
    const auto& ga = a.globals[i];
    const auto& gb = b.globals[i];
    if (ga.name != gb.name || ga.is_array != gb.is_array || ga.has_init != gb.has_init ||
        ga.init != gb.init || ga.size != gb.size)
      return false;
  }
  if (a.functions.size() != b.functions.size()) return false;
  for (size_t i = 0; i < a.functions.size(); i++) {
    const auto& fa = a.functions[i];
    const auto& fb = b.functions[i];
    if (fa.name != fb.name || fa.returns_int != fb.returns_int) return false;
    if (fa.params.size() != fb.params.size()) return false;
    for (size_t j = 0; j < fa.params.size(); j++)
      if (fa.params[j].name != fb.params[j].name) return false;
    if (!equal_stmt_list(fa.body, fb.body)) return false;
  }
  return true;
}

ExprPtr make_int(Ast& ast, int64_t v) {
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::IntLit;
  e->id = ast.fresh_id();
  e->value = v;
  return e;
}

ExprPtr make_var(Ast& ast, const std::string& name) {
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Var;
  e->id = ast.fresh_id();
  e->name = name;
  return e;
}

ExprPtr make_binary(Ast& ast, BinaryOp op, ExprPtr l, ExprPtr r) {
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Binary;
  e->id = ast.fresh_id();
  e->bop = op;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

ExprPtr make_unary(Ast& ast, UnaryOp op, ExprPtr operand) {
  auto e = std::make_unique<Expr>();
  e->kind = Expr::Kind::Unary;
  e->id = ast.fresh_id();
  e->uop = op;
  e->lhs = std::move(operand);
  return e;
}

StmtPtr make_assign(Ast& ast, const std::string& name, ExprPtr value) {
  auto s = std::make_unique<Stmt>();
  s->kind = Stmt::Kind::Assign;
  s->id = ast.fresh_id();
  s->name = name;
  s->expr = std::move(value);
  return s;
}

StmtPtr make_decl(Ast& ast, const std::string& name, ExprPtr init) {
  auto s = std::make_unique<Stmt>();
  s->kind = Stmt::Kind::Decl;
  s->id = ast.fresh_id();
  s->name = name;
  s->expr = std::move(init);
  return s;
}

StmtPtr make_if(Ast& ast, ExprPtr cond, std::vector<StmtPtr> then_body,
                std::vector<StmtPtr> else_body, bool has_else) {
  auto s = std::make_unique<Stmt>();
  s->kind = Stmt::Kind::If;
  s->id = ast.fresh_id();
  s->expr = std::move(cond);
  s->body = std::move(then_body);
  s->else_body = std::move(else_body);
  s->has_else = has_else;
  return s;
}

StmtPtr make_while(Ast& ast, ExprPtr cond, std::vector<StmtPtr> body) {
  auto s = std::make_unique<Stmt>();
  s->kind = Stmt::Kind::While;
  s->id = ast.fresh_id();
  s->expr = std::move(cond);
  s->body = std::move(body);
  return s;
}

StmtPtr make_return(Ast& ast, ExprPtr value) {
  auto s = std::make_unique<Stmt>();
  s->kind = Stmt::Kind::Return;
  s->id = ast.fresh_id();
  s->expr = std::move(value);
  return s;
}

//--------------------------------------------------------------------------
// Validation (name resolution + invariants)
//--------------------------------------------------------------------------

namespace {

struct Checker {
  const Ast& ast;
  std::map<std::string, const GlobalDecl*> globals;
  std::map<std::string, const FunctionDecl*> functions;
  std::set<NodeId> seen_ids;

  void note_id(NodeId id, Span span) {
    if (id <= 0 || !seen_ids.insert(id).second)
      throw CompileError(CompileError::Kind::Parse,
                         "internal: duplicate or invalid node id " + std::to_string(id), span);
  }

  struct FnScope {
    const FunctionDecl* fn;
    std::set<std::string> params;
    std::set<std::string> locals;  // textually declared so far
  };

  void check_expr(const Expr& e, FnScope& sc) {
    note_id(e.id, e.span);
    switch (e.kind) {
      case Expr::Kind::IntLit:
        break;
      case Expr::Kind::Var: {
        if (sc.params.count(e.name) || sc.locals.count(e.name)) break;
        auto it = globals.find(e.name);
        if (it == globals.end())
          throw CompileError(CompileError::Kind::Name, "unknown variable '" + e.name + "'", e.span);
        if (it->second->is_array)
          throw CompileError(CompileError::Kind::Name,
                             "array '" + e.name + "' used without index", e.span);
        break;
      }
      case Expr::Kind::Index: {
        auto it = globals.find(e.name);
        if (it == globals.end() || !it->second->is_array)
          throw CompileError(CompileError::Kind::Name, "unknown array '" + e.name + "'", e.span);
        check_expr(*e.lhs, sc);
        break;
      }
      case Expr::Kind::Call: {
        auto it = functions.find(e.name);
        if (it == functions.end())
          throw CompileError(CompileError::Kind::Name, "unknown function '" + e.name + "'", e.span);
        if (it->second->params.size() != e.args.size())
          throw CompileError(CompileError::Kind::Name,
                             "wrong argument count for '" + e.name + "'", e.span);
        for (const auto& a : e.args) check_expr(*a, sc);
        break;
      }
      case Expr::Kind::Unary:
        check_expr(*e.lhs, sc);
        break;
      case Expr::Kind::Binary:
        check_expr(*e.lhs, sc);
        check_expr(*e.rhs, sc);
        break;
    }
  }

  // Calls used for their value must target int functions.
  void check_value_expr(const Expr& e, FnScope& sc) {
    check_expr(e, sc);
    require_int_valued(e);
  }

  void require_int_valued(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Call: {
        const FunctionDecl* callee = functions.at(e.name);
        if (!callee->returns_int)
          throw CompileError(CompileError::Kind::Name,
                             "void function '" + e.name + "' used as a value", e.span);
        for (const auto& a : e.args) require_int_valued(*a);
        break;
      }
      case Expr::Kind::Unary:
        require_int_valued(*e.lhs);
        break;
      case Expr::Kind::Binary:
        require_int_valued(*e.lhs);
        require_int_valued(*e.rhs);
        break;
      case Expr::Kind::Index:
        require_int_valued(*e.lhs);
        break;
      default:
        break;
    }
  }

  void check_stmt(const Stmt& s, FnScope& sc) {
    note_id(s.id, s.span);
    switch (s.kind) {
      case Stmt::Kind::Block:
        for (const auto& c : s.body) check_stmt(*c, sc);
        break;
      case Stmt::Kind::Decl: {
        if (sc.params.count(s.name) || sc.locals.count(s.name) || globals.count(s.name))
          throw CompileError(CompileError::Kind::Duplicate,
                             "redeclaration of '" + s.name + "'", s.span);
        if (s.expr) check_value_expr(*s.expr, sc);
        sc.locals.insert(s.name);
        break;
      }
      case Stmt::Kind::Assign: {
        if (!sc.params.count(s.name) && !sc.locals.count(s.name)) {
          auto it = globals.find(s.name);
          if (it == globals.end())
            throw CompileError(CompileError::Kind::Name,
                               "unknown variable '" + s.name + "'", s.span);
          if (it->second->is_array)
            throw CompileError(CompileError::Kind::Name,
                               "array '" + s.name + "' assigned without index", s.span);
        }
        check_value_expr(*s.expr, sc);
        break;
      }
      case Stmt::Kind::IndexAssign: {
        auto it = globals.find(s.name);
        if (it == globals.end() || !it->second->is_array)
          throw CompileError(CompileError::Kind::Name, "unknown array '" + s.name + "'", s.span);
        check_value_expr(*s.index, sc);
        check_value_expr(*s.expr, sc);
        break;
      }
      case Stmt::Kind::If:
        check_value_expr(*s.expr, sc);
        for (const auto& c : s.body) check_stmt(*c, sc);
        for (const auto& c : s.else_body) check_stmt(*c, sc);
        break;
      case Stmt::Kind::While:
        check_value_expr(*s.expr, sc);
        for (const auto& c : s.body) check_stmt(*c, sc);
        break;
      case Stmt::Kind::Return:
        if (sc.fn->returns_int && !s.expr)
          throw CompileError(CompileError::Kind::Parse,
                             "function '" + sc.fn->name + "' must return a value", s.span);
        if (!sc.fn->returns_int && s.expr)
          throw CompileError(CompileError::Kind::Parse,
                             "void function '" + sc.fn->name + "' cannot return a value", s.span);
        if (s.expr) check_value_expr(*s.expr, sc);
        break;
      case Stmt::Kind::Print:
        check_value_expr(*s.expr, sc);
        break;
      case Stmt::Kind::CallStmt:
        check_expr(*s.expr, sc);
        for (const auto& a : s.expr->args) require_int_valued(*a);
        break;
    }
  }
};

}  // namespace

void validate(const Ast& ast) {
  Checker ck{ast};
  for (const auto& g : ast.globals) {
    ck.note_id(g.id, g.span);
    if (!ck.globals.emplace(g.name, &g).second)
      throw CompileError(CompileError::Kind::Duplicate,
                         "redeclaration of global '" + g.name + "'", g.span);
    if (g.is_array && g.size <= 0)
      throw CompileError(CompileError::Kind::Parse,
                         "array '" + g.name + "' must have positive size", g.span);
  }
  for (const auto& f : ast.functions) {
    ck.note_id(f.id, f.span);
    if (ck.globals.count(f.name))
      throw CompileError(CompileError::Kind::Duplicate,
                         "'" + f.name + "' already declared as a global", f.span);
    if (!ck.functions.emplace(f.name, &f).second)
      throw CompileError(CompileError::Kind::Duplicate,
                         "redeclaration of function '" + f.name + "'", f.span);
  }

  const FunctionDecl* main_fn = ast.find_function("main");
  if (!main_fn)
    throw CompileError(CompileError::Kind::Parse, "program requires a main function", Span{});
  if (!main_fn->params.empty())
    throw CompileError(CompileError::Kind::Parse, "main must take no parameters", main_fn->span);

  for (const auto& f : ast.functions) {
    Checker::FnScope sc{&f, {}, {}};
    for (const auto& p : f.params) {
      ck.note_id(p.id, p.span);
      if (ck.globals.count(p.name) || !sc.params.insert(p.name).second)
        throw CompileError(CompileError::Kind::Duplicate,
                           "redeclaration of parameter '" + p.name + "'", p.span);
    }
    for (const auto& s : f.body) ck.check_stmt(*s, sc);
  }
}

}  // namespace deob
