#include "deob/parser.hpp"

#include "deob/errors.hpp"

namespace deob {

namespace {

struct Parser {
  const std::vector<Token>& toks;
  size_t pos = 0;
  Ast ast;

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& advance() { return toks[pos < toks.size() - 1 ? pos++ : pos]; }
  bool at_eof() const { return peek().kind == TokenKind::Eof; }

  [[noreturn]] void fail(const std::string& expected) {
    const Token& t = peek();
    std::string got = t.kind == TokenKind::Eof ? "end of input" : "'" + t.lexeme + "'";
    throw CompileError(CompileError::Kind::Parse, "expected " + expected + ", got " + got, t.span);
  }

  bool is_kw(const char* kw, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Keyword && t.lexeme == kw;
  }
  bool is_punct(const char* p, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Punct && t.lexeme == p;
  }
  bool is_op(const char* o, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == TokenKind::Op && t.lexeme == o;
  }

  Token expect_kw(const char* kw) {
    if (!is_kw(kw)) fail(std::string("'") + kw + "'");
    return advance();
  }
  Token expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("'") + p + "'");
    return advance();
  }
  Token expect_op(const char* o) {
    if (!is_op(o)) fail(std::string("'") + o + "'");
    return advance();
  }
  Token expect_ident() {
    if (peek().kind != TokenKind::Ident) fail("identifier");
    return advance();
  }

  int64_t expect_int_const() {
    // Signed integer constant for global initializers / array sizes.
    bool neg = false;
    if (is_op("-")) {
      advance();
      neg = true;
    }
    if (peek().kind != TokenKind::IntLit) fail("integer constant");
    Token t = advance();
    return fold_literal(t, neg);
  }

  int64_t fold_literal(const Token& t, bool negate) {
    uint64_t mag = t.int_value;
    if (negate) {
      if (mag > (uint64_t)1 << 63)
        throw CompileError(CompileError::Kind::Lex, "integer literal out of range", t.span);
      return (int64_t)(~mag + 1);  // two's complement negate, handles -2^63
    }
    if (mag >= (uint64_t)1 << 63)
      throw CompileError(CompileError::Kind::Lex, "integer literal out of range", t.span);
    return (int64_t)mag;
  }

  //------------------------------------------------------------------------
  // Program structure
  //------------------------------------------------------------------------

  Ast parse_program() {
    while (!at_eof()) {
      if (is_kw("int") && peek(1).kind == TokenKind::Ident && is_punct("(", 2)) {
        parse_function(true);
      } else if (is_kw("void")) {
        advance();
        parse_function(false);
      } else if (is_kw("int")) {
        parse_global();
      } else {
        fail("'int' or 'void' declaration");
      }
    }
    validate(ast);
    return std::move(ast);
  }

  void parse_global() {
    Token kw = expect_kw("int");
    GlobalDecl g;
    g.id = ast.fresh_id();
    g.span = kw.span;
    g.name = expect_ident().lexeme;
    if (is_punct("[")) {
      advance();
      g.is_array = true;
      g.size = expect_int_const();
      expect_punct("]");
    } else if (is_op("=")) {
      advance();
      g.has_init = true;
      g.init = expect_int_const();
    }
    expect_punct(";");
    ast.globals.push_back(std::move(g));
  }

  void parse_function(bool returns_int) {
    Token name;
    if (returns_int) {
      expect_kw("int");
      name = expect_ident();
    } else {
      name = expect_ident();
    }
    FunctionDecl fn;
    fn.id = ast.fresh_id();
    fn.span = name.span;
    fn.name = name.lexeme;
    fn.returns_int = returns_int;
    expect_punct("(");
    if (!is_punct(")")) {
      while (true) {
        expect_kw("int");
        Token p = expect_ident();
        fn.params.push_back(Param{p.lexeme, ast.fresh_id(), p.span});
        if (!is_punct(",")) break;
        advance();
      }
    }
    expect_punct(")");
    fn.body = parse_braced_stmts();
    ast.functions.push_back(std::move(fn));
  }

  //------------------------------------------------------------------------
  // Statements
  //------------------------------------------------------------------------

  std::vector<StmtPtr> parse_braced_stmts() {
    expect_punct("{");
    std::vector<StmtPtr> out;
    while (!is_punct("}")) {
      if (at_eof()) fail("'}'");
      out.push_back(parse_stmt());
    }
    expect_punct("}");
    return out;
  }

  StmtPtr new_stmt(Stmt::Kind kind, Span span) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->id = ast.fresh_id();
    s->span = span;
    return s;
  }

  StmtPtr parse_stmt() {
    const Token& t = peek();
    if (is_punct("{")) {
      auto s = new_stmt(Stmt::Kind::Block, t.span);
      s->body = parse_braced_stmts();
      return s;
    }
    if (is_kw("int")) {
      Token kw = advance();
      auto s = new_stmt(Stmt::Kind::Decl, kw.span);
      s->name = expect_ident().lexeme;
      if (is_op("=")) {
        advance();
        s->expr = parse_expr();
      }
      expect_punct(";");
      return s;
    }
    if (is_kw("if")) return parse_if();
    if (is_kw("while")) {
      Token kw = advance();
      auto s = new_stmt(Stmt::Kind::While, kw.span);
      expect_punct("(");
      s->expr = parse_expr();
      expect_punct(")");
      s->body = parse_braced_stmts();
      return s;
    }
    if (is_kw("return")) {
      Token kw = advance();
      auto s = new_stmt(Stmt::Kind::Return, kw.span);
      if (!is_punct(";")) s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    if (is_kw("print")) {
      Token kw = advance();
      auto s = new_stmt(Stmt::Kind::Print, kw.span);
      expect_punct("(");
      s->expr = parse_expr();
      expect_punct(")");
      expect_punct(";");
      return s;
    }
    if (t.kind == TokenKind::Ident) {
      if (is_punct("(", 1)) {
        auto s = new_stmt(Stmt::Kind::CallStmt, t.span);
        s->expr = parse_primary();  // parses the call
        expect_punct(";");
        return s;
      }
      Token name = advance();
      if (is_punct("[")) {
        advance();
        auto s = new_stmt(Stmt::Kind::IndexAssign, name.span);
        s->name = name.lexeme;
        s->index = parse_expr();
        expect_punct("]");
        expect_op("=");
        s->expr = parse_expr();
        expect_punct(";");
        return s;
      }
      expect_op("=");
      auto s = new_stmt(Stmt::Kind::Assign, name.span);
      s->name = name.lexeme;
      s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    fail("statement");
  }

  StmtPtr parse_if() {
    Token kw = expect_kw("if");
    auto s = new_stmt(Stmt::Kind::If, kw.span);
    expect_punct("(");
    s->expr = parse_expr();
    expect_punct(")");
    s->body = parse_braced_stmts();
    if (is_kw("else")) {
      advance();
      s->has_else = true;
      if (is_kw("if")) {
        // else-if sugar: nest the if inside the else block.
        s->else_body.push_back(parse_if());
      } else {
        s->else_body = parse_braced_stmts();
      }
    }
    return s;
  }

  //------------------------------------------------------------------------
  // Expressions (precedence climbing)
  //------------------------------------------------------------------------

  ExprPtr new_expr(Expr::Kind kind, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->id = ast.fresh_id();
    e->span = span;
    return e;
  }

  static int binop_prec(const std::string& op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
  }

  static BinaryOp binop_kind(const std::string& op) {
    if (op == "+") return BinaryOp::Add;
    if (op == "-") return BinaryOp::Sub;
    if (op == "*") return BinaryOp::Mul;
    if (op == "/") return BinaryOp::Div;
    if (op == "%") return BinaryOp::Mod;
    if (op == "<") return BinaryOp::Lt;
    if (op == "<=") return BinaryOp::Le;
    if (op == ">") return BinaryOp::Gt;
    if (op == ">=") return BinaryOp::Ge;
    if (op == "==") return BinaryOp::Eq;
    if (op == "!=") return BinaryOp::Ne;
    if (op == "&&") return BinaryOp::And;
    return BinaryOp::Or;
  }

  ExprPtr parse_expr() { return parse_binary(1); }

  ExprPtr parse_binary(int min_prec) {
    ExprPtr lhs = parse_unary();
    while (peek().kind == TokenKind::Op) {
      int prec = binop_prec(peek().lexeme);
      if (prec < min_prec || prec == 0) break;
      Token op = advance();
      ExprPtr rhs = parse_binary(prec + 1);
      auto e = new_expr(Expr::Kind::Binary, op.span);
      e->bop = binop_kind(op.lexeme);
      e->lhs = std::move(lhs);
      e->rhs = std::move(rhs);
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (is_op("-")) {
      Token op = advance();
      // Fold the sign into the literal so "-5" round-trips as one node.
      if (peek().kind == TokenKind::IntLit) {
        Token lit = advance();
        auto e = new_expr(Expr::Kind::IntLit, op.span);
        e->value = fold_literal(lit, true);
        return e;
      }
      auto e = new_expr(Expr::Kind::Unary, op.span);
      e->uop = UnaryOp::Neg;
      e->lhs = parse_unary();
      return e;
    }
    if (is_op("!")) {
      Token op = advance();
      auto e = new_expr(Expr::Kind::Unary, op.span);
      e->uop = UnaryOp::Not;
      e->lhs = parse_unary();
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    if (t.kind == TokenKind::IntLit) {
      Token lit = advance();
      auto e = new_expr(Expr::Kind::IntLit, lit.span);
      e->value = fold_literal(lit, false);
      return e;
    }
    if (is_punct("(")) {
      advance();
      ExprPtr inner = parse_expr();
      expect_punct(")");
      return inner;
    }
    if (t.kind == TokenKind::Ident) {
      Token name = advance();
      if (is_punct("(")) {
        advance();
        auto e = new_expr(Expr::Kind::Call, name.span);
        e->name = name.lexeme;
        if (!is_punct(")")) {
          while (true) {
            e->args.push_back(parse_expr());
            if (!is_punct(",")) break;
            advance();
          }
        }
        expect_punct(")");
        return e;
      }
      if (is_punct("[")) {
        advance();
        auto e = new_expr(Expr::Kind::Index, name.span);
        e->name = name.lexeme;
        e->lhs = parse_expr();
        expect_punct("]");
        return e;
      }
      auto e = new_expr(Expr::Kind::Var, name.span);
      e->name = name.lexeme;
      return e;
    }
    fail("expression");
  }
};

}  // namespace

Ast parse(const std::vector<Token>& tokens) {
  Parser p{tokens};
  return p.parse_program();
}

Ast parse_source(const SourceUnit& src) {
  return parse(tokenize(src));
}

}  // namespace deob
