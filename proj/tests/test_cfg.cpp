#include "doctest.h"

#include "deob/cfg.hpp"
#include "deob/parser.hpp"

using namespace deob;

namespace {

Cfg cfg_of(const std::string& body) {
  Ast ast = parse_source(SourceUnit{"int main(){" + body + "}", "<test>"});
  return build_cfg(ast.functions[0]);
}

}  // namespace

TEST_SUITE("cfg") {
  TEST_CASE("straight line is one block, no edges") {
    Cfg g = cfg_of("int x = 1; x = x + 1; print(x); return 0;");
    CHECK(g.blocks.size() == 1);
    CHECK(g.edges.empty());
    auto st = cfg_stats(g);
    CHECK(st.nodes == 1);
    CHECK(st.edges == 0);
    CHECK(st.cyclomatic == 1);
  }

  TEST_CASE("if/else lowers to a diamond") {
    Cfg g = cfg_of("int x = 1; if (x > 0) { print(1); } else { print(2); } return 0;");
    CHECK(g.blocks.size() == 4);
    CHECK(g.edges.size() == 4);
    auto st = cfg_stats(g);
    CHECK(st.cyclomatic == 2);
  }

  TEST_CASE("if without else lowers to a triangle") {
    Cfg g = cfg_of("int x = 1; if (x > 0) { print(1); } return 0;");
    CHECK(g.blocks.size() == 3);
    CHECK(g.edges.size() == 3);
  }

  TEST_CASE("while lowers to header/body/exit with back edge") {
    Cfg g = cfg_of("int i = 0; while (i < 3) { i = i + 1; } return i;");
    // pre-header holds the init, then header/body/exit
    CHECK(g.blocks.size() == 4);
    auto back = detect_back_edges(g);
    REQUIRE(back.size() == 1);

    Cfg h = cfg_of("while (1) { print(1); } return 0;");
    CHECK(h.blocks.size() == 3);  // header reuses the empty entry block
    CHECK(h.edges.size() == 3);
    auto st = cfg_stats(h);
    CHECK(st.nodes == 3);
    CHECK(st.edges == 3);
    CHECK(st.cyclomatic == 2);
    auto hback = detect_back_edges(h);
    REQUIRE(hback.size() == 1);
    CHECK(hback.begin()->second == h.entry);
  }

  TEST_CASE("acyclic diamond has no back edges") {
    Cfg g = cfg_of("int x = 1; if (x) { print(1); } else { print(2); } return 0;");
    CHECK(detect_back_edges(g).empty());
  }

  TEST_CASE("nested whiles give two back edges") {
    Cfg g = cfg_of(
        "int i = 0;"
        "while (i < 3) { int j = 0; while (j < 3) { j = j + 1; } i = i + 1; }"
        "return 0;");
    CHECK(detect_back_edges(g).size() == 2);
  }

  TEST_CASE("topo order respects the partial order") {
    Cfg g = cfg_of("int x = 1; if (x) { print(1); } else { print(2); } return 0;");
    auto order = topo_order(g, detect_back_edges(g));
    REQUIRE(order.size() == 4);
    CHECK(order.front() == g.entry);
    CHECK(order.back() == 3);  // join
  }

  TEST_CASE("topo order on while loop is header, body, exit") {
    Cfg g = cfg_of("while (1) { print(1); } return 0;");
    auto order = topo_order(g, detect_back_edges(g));
    REQUIRE(order.size() == 3);
    CHECK(order[0] == 0);
    CHECK(order[1] == 1);
    CHECK(order[2] == 2);
  }

  TEST_CASE("statements after return are retained but unreachable") {
    Cfg g = cfg_of("return 0; print(9);");
    CHECK(g.blocks.size() == 2);
    CHECK(g.unreachable.size() == 1);
  }

  TEST_CASE("cycle error on irreducible residue") {
    // Hand-built: two blocks forming a cycle with no dominator back edge.
    Cfg g;
    g.function = "h";
    g.blocks[0] = BasicBlock{0, {}, nullptr};
    g.blocks[1] = BasicBlock{1, {}, nullptr};
    g.blocks[2] = BasicBlock{2, {}, nullptr};
    g.entry = 0;
    // 0 branches to both 1 and 2; 1 and 2 form a two-node cycle.
    g.edges.push_back({0, 1, GuardKind::CondTrue});
    g.edges.push_back({0, 2, GuardKind::CondFalse});
    g.edges.push_back({1, 2, GuardKind::Always});
    g.edges.push_back({2, 1, GuardKind::Always});
    CHECK(detect_back_edges(g).empty());
    CHECK_THROWS_AS(topo_order(g, {}), GraphError);
  }

  TEST_CASE("dot output is deterministic and edge-per-line") {
    Cfg g = cfg_of("int x = 1; if (x) { print(1); } return 0;");
    std::string dot = to_dot(g);
    CHECK(dot == to_dot(g));
    CHECK(dot.find("0 -> 1 [label=\"T\"];") != std::string::npos);
    CHECK(dot.find("digraph \"main\"") != std::string::npos);
  }
}
