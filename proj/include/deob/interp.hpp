#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "deob/ast.hpp"
#include "deob/cfg.hpp"

namespace deob {

enum class RunStatus { Ok, RuntimeError, StepLimit };

enum class FaultKind { None, DivisionByZero, ModuloByZero, IndexOutOfBounds, MissingMain };

constexpr int64_t kDefaultStepLimit = 10'000'000;

struct ExecOutput {
  std::string stdout_text;  // one decimal integer per line
  RunStatus status = RunStatus::Ok;
  FaultKind fault = FaultKind::None;
  Span fault_span;
  int64_t steps = 0;
  // Instrumented mode only: function -> block id -> execution count.
  std::map<std::string, std::map<int, int64_t>> coverage;

  bool ok() const { return status == RunStatus::Ok; }
};

const char* fault_name(FaultKind kind);

// Big-step execution from main. 64-bit wrapping arithmetic, truncating
// division, short-circuit logic; print appends one decimal line. Exceeding
// step_limit yields StepLimit status.
ExecOutput run(const Ast& ast, int64_t step_limit = kDefaultStepLimit);

// True iff both runs finished ok with byte-identical stdout.
bool outputs_equal(const ExecOutput& a, const ExecOutput& b);

// Executes through the given per-function CFGs (block stepping) instead of
// the statement tree, counting block entries. Output must match run() on
// the same Ast; used as the lowering-soundness oracle and the reachability
// witness for bogus branches.
ExecOutput run_instrumented(const Ast& ast, const std::map<std::string, Cfg>& cfgs,
                            int64_t step_limit = kDefaultStepLimit);

}  // namespace deob
