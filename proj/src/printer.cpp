#include "deob/printer.hpp"

#include <string>

namespace deob {

namespace {

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq: case BinaryOp::Ne: return 3;
    case BinaryOp::Lt: case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge: return 4;
    case BinaryOp::Add: case BinaryOp::Sub: return 5;
    default: return 6;
  }
}

const char* binary_text(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

int expr_prec(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Binary: return binary_prec(e.bop);
    case Expr::Kind::Unary: return 7;
    default: return 8;  // primary
  }
}

void print_expr(const Expr& e, std::string& out);

void print_child(const Expr& child, int parent_prec, bool is_right, std::string& out) {
  int prec = expr_prec(child);
  bool parens = prec < parent_prec || (is_right && prec == parent_prec);
  if (parens) out += '(';
  print_expr(child, out);
  if (parens) out += ')';
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::IntLit:
      out += std::to_string(e.value);
      break;
    case Expr::Kind::Var:
      out += e.name;
      break;
    case Expr::Kind::Index:
      out += e.name;
      out += '[';
      print_expr(*e.lhs, out);
      out += ']';
      break;
    case Expr::Kind::Call: {
      out += e.name;
      out += '(';
      for (size_t i = 0; i < e.args.size(); i++) {
        if (i) out += ", ";
        print_expr(*e.args[i], out);
      }
      out += ')';
      break;
    }
    case Expr::Kind::Unary: {
      out += e.uop == UnaryOp::Neg ? '-' : '!';
      // Non-primary operands always get parens; keeps "-(-x)" unambiguous.
      bool parens = expr_prec(*e.lhs) < 8;
      if (parens) out += '(';
      print_expr(*e.lhs, out);
      if (parens) out += ')';
      break;
    }
    case Expr::Kind::Binary: {
      int prec = binary_prec(e.bop);
      print_child(*e.lhs, prec, false, out);
      out += ' ';
      out += binary_text(e.bop);
      out += ' ';
      print_child(*e.rhs, prec, true, out);
      break;
    }
  }
}

void indent(int depth, std::string& out) {
  out.append((size_t)depth * 2, ' ');
}

void print_stmt(const Stmt& s, int depth, std::string& out);

void print_stmt_list(const std::vector<StmtPtr>& stmts, int depth, std::string& out) {
  for (const auto& s : stmts) print_stmt(*s, depth, out);
}

void print_stmt(const Stmt& s, int depth, std::string& out) {
  switch (s.kind) {
    case Stmt::Kind::Block:
      indent(depth, out);
      out += "{\n";
      print_stmt_list(s.body, depth + 1, out);
      indent(depth, out);
      out += "}\n";
      break;
    case Stmt::Kind::Decl:
      indent(depth, out);
      out += "int " + s.name;
      if (s.expr) {
        out += " = ";
        print_expr(*s.expr, out);
      }
      out += ";\n";
      break;
    case Stmt::Kind::Assign:
      indent(depth, out);
      out += s.name + " = ";
      print_expr(*s.expr, out);
      out += ";\n";
      break;
    case Stmt::Kind::IndexAssign:
      indent(depth, out);
      out += s.name + "[";
      print_expr(*s.index, out);
      out += "] = ";
      print_expr(*s.expr, out);
      out += ";\n";
      break;
    case Stmt::Kind::If:
      indent(depth, out);
      out += "if (";
      print_expr(*s.expr, out);
      out += ") {\n";
      print_stmt_list(s.body, depth + 1, out);
      indent(depth, out);
      if (s.has_else) {
        out += "} else {\n";
        print_stmt_list(s.else_body, depth + 1, out);
        indent(depth, out);
      }
      out += "}\n";
      break;
    case Stmt::Kind::While:
      indent(depth, out);
      out += "while (";
      print_expr(*s.expr, out);
      out += ") {\n";
      print_stmt_list(s.body, depth + 1, out);
      indent(depth, out);
      out += "}\n";
      break;
    case Stmt::Kind::Return:
      indent(depth, out);
      out += "return";
      if (s.expr) {
        out += ' ';
        print_expr(*s.expr, out);
      }
      out += ";\n";
      break;
    case Stmt::Kind::Print:
      indent(depth, out);
      out += "print(";
      print_expr(*s.expr, out);
      out += ");\n";
      break;
    case Stmt::Kind::CallStmt:
      indent(depth, out);
      print_expr(*s.expr, out);
      out += ";\n";
      break;
  }
}

}  // namespace

std::string emit_expr(const Expr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

std::string emit(const Ast& ast, const std::string&) {
  std::string out;
  for (const auto& g : ast.globals) {
    out += "int " + g.name;
    if (g.is_array) {
      out += "[" + std::to_string(g.size) + "]";
    } else if (g.has_init) {
      out += " = " + std::to_string(g.init);
    }
    out += ";\n";
  }
  for (const auto& f : ast.functions) {
    if (!out.empty()) out += "\n";
    out += f.returns_int ? "int " : "void ";
    out += f.name + "(";
    for (size_t i = 0; i < f.params.size(); i++) {
      if (i) out += ", ";
      out += "int " + f.params[i].name;
    }
    out += ") {\n";
    print_stmt_list(f.body, 1, out);
    out += "}\n";
  }
  return out;
}

SourceUnit emit_unit(const Ast& ast, const std::string& origin) {
  return SourceUnit{emit(ast), origin};
}

}  // namespace deob
