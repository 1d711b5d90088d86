#include "doctest.h"

#include "deob/cfg.hpp"
#include "deob/interp.hpp"
#include "deob/normalize.hpp"
#include "deob/parser.hpp"
#include "deob/strip.hpp"

using namespace deob;

namespace {

Ast parse_text(const std::string& text) {
  return parse_source(SourceUnit{text, "<test>"});
}

std::map<std::string, Cfg> cfgs_of(const Ast& ast) {
  std::map<std::string, Cfg> out;
  for (const auto& f : ast.functions) out[f.name] = build_cfg(f);
  return out;
}

}  // namespace

TEST_SUITE("interp") {
  TEST_CASE("prints one decimal line") {
    auto out = run(parse_text("int main(){print(2+3); return 0;}"));
    CHECK(out.ok());
    CHECK(out.stdout_text == "5\n");
  }

  TEST_CASE("division and modulo by zero") {
    auto d = run(parse_text("int main(){ int z = 0; return 1 / z; }"));
    CHECK(d.status == RunStatus::RuntimeError);
    CHECK(d.fault == FaultKind::DivisionByZero);
    auto m = run(parse_text("int main(){ int z = 0; return 1 % z; }"));
    CHECK(m.fault == FaultKind::ModuloByZero);
  }

  TEST_CASE("index out of bounds") {
    auto out = run(parse_text("int a[4]; int main(){ return a[4]; }"));
    CHECK(out.fault == FaultKind::IndexOutOfBounds);
  }

  TEST_CASE("wrapping arithmetic") {
    auto out = run(parse_text("int main(){ print(9223372036854775807 + 1); return 0; }"));
    CHECK(out.stdout_text == "-9223372036854775808\n");
    auto neg = run(parse_text("int main(){ print(-9223372036854775808 / -1); return 0; }"));
    CHECK(neg.stdout_text == "-9223372036854775808\n");
    auto mod = run(parse_text("int main(){ print(-9223372036854775808 % -1); return 0; }"));
    CHECK(mod.stdout_text == "0\n");
    auto div = run(parse_text("int main(){ print(-7 / 2); print(-7 % 2); return 0; }"));
    CHECK(div.stdout_text == "-3\n-1\n");
  }

  TEST_CASE("short circuit skips the right side") {
    auto out = run(parse_text(
        "int z = 0;"
        "int boom(){ z = 1; return 1; }"
        "int main(){ if (0 && boom()) { print(9); } if (1 || boom()) { print(z); } return 0; }"));
    CHECK(out.stdout_text == "0\n");
  }

  TEST_CASE("step limit halts runaway loops") {
    auto out = run(parse_text("int main(){ while (1) { int x = 0; } return 0; }"), 1000);
    CHECK(out.status == RunStatus::StepLimit);
  }

  TEST_CASE("recursion works") {
    auto out = run(parse_text(
        "int fib(int n){ if (n < 2) { return n; } return fib(n-1) + fib(n-2); }"
        "int main(){ print(fib(10)); return 0; }"));
    CHECK(out.stdout_text == "55\n");
  }

  TEST_CASE("outputs_equal gates on status") {
    auto a = run(parse_text("int main(){ print(1); return 0; }"));
    auto b = run(parse_text("int main(){ print(1); return 0; }"));
    CHECK(outputs_equal(a, b));
    auto err = run(parse_text("int main(){ int z = 0; print(1); return 1/z; }"));
    CHECK(err.stdout_text == "1\n");
    CHECK(!outputs_equal(a, err));
    auto limited = run(parse_text("int main(){ print(1); while(1) { int x = 0; } return 0; }"), 500);
    CHECK(limited.stdout_text == "1\n");
    CHECK(!outputs_equal(a, limited));
  }

  TEST_CASE("determinism") {
    std::string src =
        "int acc = 0;"
        "int main(){ int i = 0; while (i < 100) { acc = acc * 31 + i; i = i + 1; } "
        "print(acc); return 0; }";
    auto a = run(parse_text(src));
    auto b = run(parse_text(src));
    CHECK(a.stdout_text == b.stdout_text);
    CHECK(a.steps == b.steps);
  }

  TEST_CASE("missing main reported") {
    Ast ast;  // empty program, built by hand to skip validation
    auto out = run(ast);
    CHECK(out.fault == FaultKind::MissingMain);
  }
}

TEST_SUITE("interp-instrumented") {
  TEST_CASE("cfg walk matches tree walk") {
    std::string src =
        "int a[5];"
        "int sum(int n){ int s = 0; int i = 0; while (i < n) { s = s + a[i]; i = i + 1; } return s; }"
        "int main(){ int i = 0; while (i < 5) { a[i] = i * i; i = i + 1; }"
        " if (sum(5) > 10) { print(sum(5)); } else { print(0); } return 0; }";
    Ast ast = parse_text(src);
    auto plain = run(ast);
    auto cfgs = cfgs_of(ast);
    auto inst = run_instrumented(ast, cfgs);
    CHECK(plain.ok());
    CHECK(inst.ok());
    CHECK(plain.stdout_text == inst.stdout_text);
    CHECK(!inst.coverage.empty());
  }

  TEST_CASE("empty main covers only the entry block") {
    Ast ast = parse_text("int main(){ return 0; }");
    auto cfgs = cfgs_of(ast);
    auto out = run_instrumented(ast, cfgs);
    REQUIRE(out.coverage.count("main"));
    CHECK(out.coverage["main"].size() == 1);
    CHECK(out.coverage["main"][0] == 1);
  }

  TEST_CASE("loop blocks are counted per iteration") {
    Ast ast = parse_text("int main(){ int i = 0; while (i < 3) { i = i + 1; } return i; }");
    auto cfgs = cfgs_of(ast);
    auto out = run_instrumented(ast, cfgs);
    // header runs 4 times (3 taken + 1 exit), body 3 times
    const auto& cov = out.coverage["main"];
    int64_t header_hits = 0;
    for (const auto& [block, hits] : cov) header_hits = std::max(header_hits, hits);
    CHECK(header_hits == 4);
  }
}
