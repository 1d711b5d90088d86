#include "deob/normalize.hpp"

#include "deob/wrap.hpp"

namespace deob {

bool has_call(const Expr& e) {
  if (e.kind == Expr::Kind::Call) return true;
  if (e.lhs && has_call(*e.lhs)) return true;
  if (e.rhs && has_call(*e.rhs)) return true;
  for (const auto& a : e.args)
    if (has_call(*a)) return true;
  return false;
}

namespace {

bool is_lit(const Expr& e) { return e.kind == Expr::Kind::IntLit; }

// Comparison/logic operators and logical-not yield 0 or 1; double logical
// negation is only droppable on such operands.
bool is_boolean_valued(const Expr& e) {
  if (e.kind == Expr::Kind::Unary) return e.uop == UnaryOp::Not;
  if (e.kind != Expr::Kind::Binary) return false;
  switch (e.bop) {
    case BinaryOp::Lt: case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge:
    case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::And: case BinaryOp::Or:
      return true;
    default:
      return false;
  }
}

struct Normalizer {
  Ast& ast;
  bool changed = false;

  ExprPtr fold_expr(ExprPtr e) {
    if (e->lhs) e->lhs = fold_expr(std::move(e->lhs));
    if (e->rhs) e->rhs = fold_expr(std::move(e->rhs));
    for (auto& a : e->args) a = fold_expr(std::move(a));

    if (e->kind == Expr::Kind::Unary) {
      // --x == x under two's complement; !!x == x only for 0/1-valued x.
      if (e->lhs->kind == Expr::Kind::Unary && e->lhs->uop == e->uop &&
          (e->uop == UnaryOp::Neg || is_boolean_valued(*e->lhs->lhs))) {
        changed = true;
        return std::move(e->lhs->lhs);
      }
      if (is_lit(*e->lhs)) {
        int64_t v = e->lhs->value;
        changed = true;
        return make_int(ast, e->uop == UnaryOp::Neg ? wrap_neg(v) : (v == 0 ? 1 : 0));
      }
      return e;
    }

    if (e->kind != Expr::Kind::Binary) return e;

    // Short-circuit forms decided by the left operand alone.
    if (e->bop == BinaryOp::And && is_lit(*e->lhs) && e->lhs->value == 0) {
      changed = true;
      return make_int(ast, 0);
    }
    if (e->bop == BinaryOp::Or && is_lit(*e->lhs) && e->lhs->value != 0) {
      changed = true;
      return make_int(ast, 1);
    }

    if (!is_lit(*e->lhs) || !is_lit(*e->rhs)) return e;
    int64_t a = e->lhs->value;
    int64_t b = e->rhs->value;
    int64_t v;
    switch (e->bop) {
      case BinaryOp::Add: v = wrap_add(a, b); break;
      case BinaryOp::Sub: v = wrap_sub(a, b); break;
      case BinaryOp::Mul: v = wrap_mul(a, b); break;
      case BinaryOp::Div:
        if (b == 0) return e;  // keep the runtime error
        v = wrap_div(a, b);
        break;
      case BinaryOp::Mod:
        if (b == 0) return e;
        v = wrap_mod(a, b);
        break;
      case BinaryOp::Lt: v = a < b; break;
      case BinaryOp::Le: v = a <= b; break;
      case BinaryOp::Gt: v = a > b; break;
      case BinaryOp::Ge: v = a >= b; break;
      case BinaryOp::Eq: v = a == b; break;
      case BinaryOp::Ne: v = a != b; break;
      case BinaryOp::And: v = (a != 0 && b != 0); break;
      case BinaryOp::Or: v = (a != 0 || b != 0); break;
      default: return e;
    }
    changed = true;
    return make_int(ast, v);
  }

  void simplify_list(std::vector<StmtPtr>& stmts) {
    std::vector<StmtPtr> out;
    out.reserve(stmts.size());
    for (auto& sp : stmts) {
      if (sp->expr) sp->expr = fold_expr(std::move(sp->expr));
      if (sp->index) sp->index = fold_expr(std::move(sp->index));
      simplify_list(sp->body);
      simplify_list(sp->else_body);

      switch (sp->kind) {
        case Stmt::Kind::Block:
          // Splice grouping blocks into the parent list.
          changed = true;
          for (auto& c : sp->body) out.push_back(std::move(c));
          break;
        case Stmt::Kind::If: {
          if (is_lit(*sp->expr)) {
            changed = true;
            auto& taken = sp->expr->value != 0 ? sp->body : sp->else_body;
            for (auto& c : taken) out.push_back(std::move(c));
            break;
          }
          if (sp->has_else && sp->else_body.empty()) {
            changed = true;
            sp->has_else = false;
          }
          if (sp->body.empty() && sp->has_else) {
            // if (c) {} else {B}  ->  if (!(c)) {B}
            changed = true;
            sp->expr = fold_expr(make_unary(ast, UnaryOp::Not, std::move(sp->expr)));
            sp->body = std::move(sp->else_body);
            sp->else_body.clear();
            sp->has_else = false;
          }
          if (sp->body.empty() && !sp->has_else) {
            if (!has_call(*sp->expr)) {
              changed = true;
              break;  // drop the statement entirely
            }
          }
          out.push_back(std::move(sp));
          break;
        }
        case Stmt::Kind::While:
          if (is_lit(*sp->expr) && sp->expr->value == 0) {
            changed = true;
            break;
          }
          out.push_back(std::move(sp));
          break;
        default:
          out.push_back(std::move(sp));
          break;
      }
    }
    stmts = std::move(out);
  }
};

}  // namespace

Ast normalize(const Ast& input) {
  Ast ast = clone_ast(input);
  // Iterate to a fixpoint; each pass is cheap and the chain is short.
  for (int round = 0; round < 16; round++) {
    Normalizer n{ast};
    for (auto& f : ast.functions) n.simplify_list(f.body);
    if (!n.changed) break;
  }
  return ast;
}

}  // namespace deob
