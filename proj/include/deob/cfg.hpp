#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "deob/ast.hpp"

namespace deob {

// Straight-line run of statements. Control never branches inside a block;
// a block with a guard expression branches on it (true/false out-edges).
struct BasicBlock {
  int id = 0;
  std::vector<const Stmt*> stmts;
  const Expr* guard = nullptr;
};

enum class GuardKind { Always, CondTrue, CondFalse };

struct CfgEdge {
  int from = 0;
  int to = 0;
  GuardKind kind = GuardKind::Always;

  bool operator<(const CfgEdge& o) const {
    if (from != o.from) return from < o.from;
    if (to != o.to) return to < o.to;
    return (int)kind < (int)o.kind;
  }
  bool operator==(const CfgEdge& o) const {
    return from == o.from && to == o.to && kind == o.kind;
  }
};

// Per-function control flow graph. Blocks unreachable from the entry are
// retained but flagged; metrics count them so stray artifacts cost
// similarity.
struct Cfg {
  std::string function;
  std::map<int, BasicBlock> blocks;
  std::vector<CfgEdge> edges;  // kept sorted
  int entry = 0;
  std::set<int> exits;
  std::set<int> unreachable;

  std::vector<int> successors(int block) const;
  std::vector<int> predecessors(int block) const;
  // Deduplicated (from, to) pairs; the structural view the metrics use.
  std::set<std::pair<int, int>> edge_pairs() const;
};

struct CfgStats {
  int nodes = 0;
  int edges = 0;
  int cyclomatic = 0;  // E - N + 2P over weakly connected components
};

using BackEdgeSet = std::set<std::pair<int, int>>;

class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

// Lowers structured control flow: if yields a diamond (or triangle without
// else), while yields header/body/exit with a back edge, return closes the
// block as an exit. Block ids are assigned in creation order, entry is 0.
Cfg build_cfg(const FunctionDecl& fn);

// Dominator sets over reachable blocks (iterative dataflow).
std::map<int, std::set<int>> dominators(const Cfg& g);

// Edges whose target dominates their source.
BackEdgeSet detect_back_edges(const Cfg& g);

// Kahn's algorithm over reachable blocks with back edges removed; ties
// broken by smallest block id. Throws GraphError if a cycle remains.
std::vector<int> topo_order(const Cfg& g, const BackEdgeSet& back);

CfgStats cfg_stats(const Cfg& g);

// Deterministic DOT rendering: sorted node lines, then one line per edge.
std::string to_dot(const Cfg& g);

// Blocks reachable from entry.
std::set<int> reachable_blocks(const Cfg& g);

}  // namespace deob
