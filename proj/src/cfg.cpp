#include "deob/cfg.hpp"

#include <algorithm>
#include <queue>

namespace deob {

std::vector<int> Cfg::successors(int block) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.from == block) out.push_back(e.to);
  return out;
}

std::vector<int> Cfg::predecessors(int block) const {
  std::vector<int> out;
  for (const auto& e : edges)
    if (e.to == block) out.push_back(e.from);
  return out;
}

std::set<std::pair<int, int>> Cfg::edge_pairs() const {
  std::set<std::pair<int, int>> out;
  for (const auto& e : edges) out.insert({e.from, e.to});
  return out;
}

//--------------------------------------------------------------------------
// Lowering
//--------------------------------------------------------------------------

namespace {

struct CfgBuilder {
  Cfg cfg;
  int next_id = 0;
  int cur = -1;  // -1: no open block (after return / both branches exited)

  int new_block() {
    int id = next_id++;
    cfg.blocks[id] = BasicBlock{id, {}, nullptr};
    return id;
  }

  void edge(int from, int to, GuardKind kind) {
    cfg.edges.push_back(CfgEdge{from, to, kind});
  }

  void ensure_cur() {
    if (cur == -1) cur = new_block();  // detached: unreachable continuation
  }

  void walk(const std::vector<StmtPtr>& stmts) {
    for (const auto& s : stmts) walk_stmt(*s);
  }

  void walk_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Block:
        walk(s.body);
        break;
      case Stmt::Kind::Decl:
      case Stmt::Kind::Assign:
      case Stmt::Kind::IndexAssign:
      case Stmt::Kind::Print:
      case Stmt::Kind::CallStmt:
        ensure_cur();
        cfg.blocks[cur].stmts.push_back(&s);
        break;
      case Stmt::Kind::Return:
        ensure_cur();
        cfg.blocks[cur].stmts.push_back(&s);
        cfg.exits.insert(cur);
        cur = -1;
        break;
      case Stmt::Kind::If:
        lower_if(s);
        break;
      case Stmt::Kind::While:
        lower_while(s);
        break;
    }
  }

  void lower_if(const Stmt& s) {
    ensure_cur();
    int head = cur;
    cfg.blocks[head].guard = s.expr.get();

    int then_entry = new_block();
    edge(head, then_entry, GuardKind::CondTrue);
    cur = then_entry;
    walk(s.body);
    int then_end = cur;

    int else_end = -1;
    if (s.has_else) {
      int else_entry = new_block();
      edge(head, else_entry, GuardKind::CondFalse);
      cur = else_entry;
      walk(s.else_body);
      else_end = cur;
    }

    bool need_join = !s.has_else || then_end != -1 || else_end != -1;
    if (need_join) {
      int join = new_block();
      if (!s.has_else) edge(head, join, GuardKind::CondFalse);
      if (then_end != -1) edge(then_end, join, GuardKind::Always);
      if (s.has_else && else_end != -1) edge(else_end, join, GuardKind::Always);
      cur = join;
    } else {
      cur = -1;
    }
  }

  void lower_while(const Stmt& s) {
    int header;
    if (cur != -1 && cfg.blocks[cur].stmts.empty() && cfg.blocks[cur].guard == nullptr) {
      header = cur;  // fold the loop header into an empty open block
    } else {
      header = new_block();
      if (cur != -1) edge(cur, header, GuardKind::Always);
    }
    cfg.blocks[header].guard = s.expr.get();

    int body_entry = new_block();
    edge(header, body_entry, GuardKind::CondTrue);
    cur = body_entry;
    walk(s.body);
    if (cur != -1) edge(cur, header, GuardKind::Always);

    int exit_block = new_block();
    edge(header, exit_block, GuardKind::CondFalse);
    cur = exit_block;
  }
};

}  // namespace

std::set<int> reachable_blocks(const Cfg& g) {
  std::set<int> seen;
  if (!g.blocks.count(g.entry)) return seen;
  std::vector<int> work{g.entry};
  seen.insert(g.entry);
  while (!work.empty()) {
    int n = work.back();
    work.pop_back();
    for (const auto& e : g.edges) {
      if (e.from == n && !seen.count(e.to)) {
        seen.insert(e.to);
        work.push_back(e.to);
      }
    }
  }
  return seen;
}

Cfg build_cfg(const FunctionDecl& fn) {
  CfgBuilder b;
  b.cfg.function = fn.name;
  b.cfg.entry = b.new_block();
  b.cur = b.cfg.entry;
  b.walk(fn.body);
  if (b.cur != -1) b.cfg.exits.insert(b.cur);
  std::sort(b.cfg.edges.begin(), b.cfg.edges.end());

  std::set<int> reached = reachable_blocks(b.cfg);
  for (const auto& [id, blk] : b.cfg.blocks)
    if (!reached.count(id)) b.cfg.unreachable.insert(id);
  return std::move(b.cfg);
}

//--------------------------------------------------------------------------
// Dominators / back edges / ordering
//--------------------------------------------------------------------------

std::map<int, std::set<int>> dominators(const Cfg& g) {
  std::set<int> reached = reachable_blocks(g);
  std::map<int, std::set<int>> dom;
  for (int n : reached) dom[n] = reached;  // all-but-entry start full
  dom[g.entry] = {g.entry};

  // Predecessor lists restricted to reachable blocks.
  std::map<int, std::vector<int>> preds;
  for (const auto& e : g.edges)
    if (reached.count(e.from) && reached.count(e.to)) preds[e.to].push_back(e.from);

  bool changed = true;
  while (changed) {
    changed = false;
    for (int n : reached) {
      if (n == g.entry) continue;
      std::set<int> meet;
      bool first = true;
      for (int p : preds[n]) {
        if (first) {
          meet = dom[p];
          first = false;
        } else {
          std::set<int> inter;
          std::set_intersection(meet.begin(), meet.end(), dom[p].begin(), dom[p].end(),
                                std::inserter(inter, inter.begin()));
          meet = std::move(inter);
        }
      }
      meet.insert(n);
      if (meet != dom[n]) {
        dom[n] = std::move(meet);
        changed = true;
      }
    }
  }
  return dom;
}

BackEdgeSet detect_back_edges(const Cfg& g) {
  auto dom = dominators(g);
  BackEdgeSet out;
  for (const auto& e : g.edges) {
    auto it = dom.find(e.from);
    if (it == dom.end()) continue;  // unreachable source
    if (it->second.count(e.to)) out.insert({e.from, e.to});
  }
  return out;
}

std::vector<int> topo_order(const Cfg& g, const BackEdgeSet& back) {
  std::set<int> reached = reachable_blocks(g);
  std::map<int, int> indegree;
  for (int n : reached) indegree[n] = 0;
  std::set<std::pair<int, int>> counted;  // parallel guard edges count once
  for (const auto& e : g.edges) {
    if (!reached.count(e.from) || !reached.count(e.to)) continue;
    if (back.count({e.from, e.to})) continue;
    if (counted.insert({e.from, e.to}).second) indegree[e.to]++;
  }

  std::set<int> ready;
  for (const auto& [n, d] : indegree)
    if (d == 0) ready.insert(n);

  std::vector<int> order;
  while (!ready.empty()) {
    int n = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(n);
    for (const auto& e : g.edges) {
      if (e.from != n || !reached.count(e.to)) continue;
      if (back.count({e.from, e.to})) continue;
      if (counted.erase({e.from, e.to}) && --indegree[e.to] == 0) ready.insert(e.to);
    }
  }
  if (order.size() != reached.size())
    throw GraphError("cycle remains after removing back edges (irreducible graph)");
  return order;
}

CfgStats cfg_stats(const Cfg& g) {
  CfgStats st;
  st.nodes = (int)g.blocks.size();
  st.edges = (int)g.edges.size();

  // Weakly connected components.
  std::map<int, int> comp;
  int ncomp = 0;
  for (const auto& [id, blk] : g.blocks) {
    if (comp.count(id)) continue;
    ncomp++;
    std::vector<int> work{id};
    comp[id] = ncomp;
    while (!work.empty()) {
      int n = work.back();
      work.pop_back();
      for (const auto& e : g.edges) {
        int other = -1;
        if (e.from == n) other = e.to;
        else if (e.to == n) other = e.from;
        if (other != -1 && !comp.count(other)) {
          comp[other] = ncomp;
          work.push_back(other);
        }
      }
    }
  }
  st.cyclomatic = st.edges - st.nodes + 2 * ncomp;
  return st;
}

std::string to_dot(const Cfg& g) {
  std::string out = "digraph \"" + g.function + "\" {\n";
  for (const auto& [id, blk] : g.blocks) {
    out += "  " + std::to_string(id);
    std::string attrs;
    if (id == g.entry) attrs += "entry";
    if (g.exits.count(id)) attrs += attrs.empty() ? "exit" : ",exit";
    if (g.unreachable.count(id)) attrs += attrs.empty() ? "unreachable" : ",unreachable";
    if (!attrs.empty()) out += " [label=\"" + std::to_string(id) + ":" + attrs + "\"]";
    out += ";\n";
  }
  std::vector<CfgEdge> sorted = g.edges;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& e : sorted) {
    out += "  " + std::to_string(e.from) + " -> " + std::to_string(e.to);
    if (e.kind == GuardKind::CondTrue) out += " [label=\"T\"]";
    else if (e.kind == GuardKind::CondFalse) out += " [label=\"F\"]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace deob
