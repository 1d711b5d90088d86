#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "deob/source.hpp"

namespace deob {

using NodeId = int;

enum class BinaryOp {
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq, Ne,
  And, Or,
};

enum class UnaryOp { Neg, Not };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// One expression node. A single tagged struct (rather than a class
// hierarchy) keeps cloning, matching, and rewriting straightforward.
//
//   IntLit  -> value
//   Var     -> name
//   Index   -> name (array), lhs (index expression)
//   Call    -> name (callee), args
//   Unary   -> uop, lhs
//   Binary  -> bop, lhs, rhs
struct Expr {
  enum class Kind { IntLit, Var, Index, Call, Unary, Binary };

  Kind kind;
  NodeId id = 0;
  Span span;

  int64_t value = 0;
  std::string name;
  UnaryOp uop = UnaryOp::Neg;
  BinaryOp bop = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
  std::vector<ExprPtr> args;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

// One statement node.
//
//   Block       -> body
//   Decl        -> name, expr (optional initializer)
//   Assign      -> name, expr
//   IndexAssign -> name, index, expr
//   If          -> expr (cond), body (then), else_body (has_else)
//   While       -> expr (cond), body
//   Return      -> expr (optional)
//   Print       -> expr
//   CallStmt    -> expr (a Call expression)
struct Stmt {
  enum class Kind { Block, Decl, Assign, IndexAssign, If, While, Return, Print, CallStmt };

  Kind kind;
  NodeId id = 0;
  Span span;

  std::string name;
  ExprPtr expr;
  ExprPtr index;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  bool has_else = false;
};

struct Param {
  std::string name;
  NodeId id = 0;
  Span span;
};

struct FunctionDecl {
  std::string name;
  bool returns_int = true;  // false: void
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  NodeId id = 0;
  Span span;
};

struct GlobalDecl {
  std::string name;
  bool is_array = false;
  bool has_init = false;   // scalar with explicit "= INT"
  int64_t init = 0;        // scalar initial value
  int64_t size = 0;        // array element count
  NodeId id = 0;
  Span span;
};

// A whole MiniLang program. node-ids are unique within one Ast; next_id is
// the allocator watermark for transforms that add nodes.
struct Ast {
  std::vector<GlobalDecl> globals;
  std::vector<FunctionDecl> functions;
  NodeId next_id = 1;

  NodeId fresh_id() { return next_id++; }
  const FunctionDecl* find_function(const std::string& name) const;
  FunctionDecl* find_function(const std::string& name);
};

// Deep copies. Node ids are preserved, so a clone lives in the same id
// space as the original.
ExprPtr clone_expr(const Expr& e);
StmtPtr clone_stmt(const Stmt& s);
Ast clone_ast(const Ast& a);

// Structural comparison ignoring node ids and spans.
bool equal_expr(const Expr& a, const Expr& b);
bool equal_stmt(const Stmt& a, const Stmt& b);
bool equal_ast(const Ast& a, const Ast& b);

// Convenience constructors used by transforms. All take the owning Ast so
// fresh node ids come from its allocator.
ExprPtr make_int(Ast& ast, int64_t v);
ExprPtr make_var(Ast& ast, const std::string& name);
ExprPtr make_binary(Ast& ast, BinaryOp op, ExprPtr l, ExprPtr r);
ExprPtr make_unary(Ast& ast, UnaryOp op, ExprPtr operand);
StmtPtr make_assign(Ast& ast, const std::string& name, ExprPtr value);
StmtPtr make_decl(Ast& ast, const std::string& name, ExprPtr init);
StmtPtr make_if(Ast& ast, ExprPtr cond, std::vector<StmtPtr> then_body,
                std::vector<StmtPtr> else_body, bool has_else);
StmtPtr make_while(Ast& ast, ExprPtr cond, std::vector<StmtPtr> body);
StmtPtr make_return(Ast& ast, ExprPtr value);

// Checks the Ast invariants: unique node ids, exactly one main taking no
// parameters, no duplicate declarations, every name resolving to a global,
// parameter, or (textually earlier) local, call arity/type agreement.
// Throws CompileError on violation.
void validate(const Ast& ast);

}  // namespace deob
