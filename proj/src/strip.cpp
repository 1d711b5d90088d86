#include "deob/strip.hpp"

#include <map>
#include <string>
#include <vector>

#include "deob/rng.hpp"

namespace deob {

namespace {

std::vector<int> permutation(size_t n, Rng& rng) {
  std::vector<int> perm((size_t)n);
  for (size_t i = 0; i < n; i++) perm[i] = (int)i;
  rng.shuffle(perm);
  return perm;
}

void rename_expr(Expr& e, const std::map<std::string, std::string>& vars,
                 const std::map<std::string, std::string>& fns) {
  switch (e.kind) {
    case Expr::Kind::Var:
    case Expr::Kind::Index: {
      auto it = vars.find(e.name);
      if (it != vars.end()) e.name = it->second;
      break;
    }
    case Expr::Kind::Call: {
      auto it = fns.find(e.name);
      if (it != fns.end()) e.name = it->second;
      break;
    }
    default:
      break;
  }
  if (e.lhs) rename_expr(*e.lhs, vars, fns);
  if (e.rhs) rename_expr(*e.rhs, vars, fns);
  for (auto& a : e.args) rename_expr(*a, vars, fns);
}

void rename_stmts(std::vector<StmtPtr>& stmts, const std::map<std::string, std::string>& vars,
                  const std::map<std::string, std::string>& fns) {
  for (auto& sp : stmts) {
    Stmt& s = *sp;
    if (s.kind == Stmt::Kind::Decl || s.kind == Stmt::Kind::Assign ||
        s.kind == Stmt::Kind::IndexAssign) {
      auto it = vars.find(s.name);
      if (it != vars.end()) s.name = it->second;
    }
    if (s.expr) rename_expr(*s.expr, vars, fns);
    if (s.index) rename_expr(*s.index, vars, fns);
    rename_stmts(s.body, vars, fns);
    rename_stmts(s.else_body, vars, fns);
  }
}

void collect_local_names(const std::vector<StmtPtr>& stmts, std::vector<std::string>& out) {
  for (const auto& s : stmts) {
    if (s->kind == Stmt::Kind::Decl) out.push_back(s->name);
    collect_local_names(s->body, out);
    collect_local_names(s->else_body, out);
  }
}

}  // namespace

Ast strip_identifiers(const Ast& input, uint64_t seed) {
  Ast ast = clone_ast(input);
  Rng rng(seed);

  std::map<std::string, std::string> global_map;
  {
    auto perm = permutation(ast.globals.size(), rng);
    for (size_t i = 0; i < ast.globals.size(); i++)
      global_map[ast.globals[i].name] = "g" + std::to_string(perm[i]);
    for (auto& g : ast.globals) g.name = global_map[g.name];
  }

  std::map<std::string, std::string> fn_map;
  {
    std::vector<size_t> renameable;
    for (size_t i = 0; i < ast.functions.size(); i++)
      if (ast.functions[i].name != "main") renameable.push_back(i);
    auto perm = permutation(renameable.size(), rng);
    for (size_t i = 0; i < renameable.size(); i++)
      fn_map[ast.functions[renameable[i]].name] = "f" + std::to_string(perm[i]);
  }

  for (size_t fi = 0; fi < ast.functions.size(); fi++) {
    FunctionDecl& f = ast.functions[fi];
    Rng fn_rng = rng.fork(fi);

    std::map<std::string, std::string> vars = global_map;
    auto pperm = permutation(f.params.size(), fn_rng);
    for (size_t i = 0; i < f.params.size(); i++) {
      vars[f.params[i].name] = "p" + std::to_string(pperm[i]);
      f.params[i].name = vars[f.params[i].name];
    }
    std::vector<std::string> locals;
    collect_local_names(f.body, locals);
    auto lperm = permutation(locals.size(), fn_rng);
    for (size_t i = 0; i < locals.size(); i++)
      vars[locals[i]] = "v" + std::to_string(lperm[i]);

    rename_stmts(f.body, vars, fn_map);
    auto it = fn_map.find(f.name);
    if (it != fn_map.end()) f.name = it->second;
  }
  return ast;
}

}  // namespace deob
