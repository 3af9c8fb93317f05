#pragma once
// Abstract machine: heap of shared bindings, control expression, stack of
// application/seq arguments, case alternatives and update markers.
//
// Measures: mln counts Subst/Branch/Seq transitions, mlnall counts every
// non-optional transition. mspmax is the maximum state size where a state
// reached by updating with a constructor application does not count (its
// heap copy is the one artefact of update-in-place the source calculus does
// not have). State size = heap binding sizes + control size + stack entry
// weights (argument entries 1, alternatives 1 + their sizes, updates 0).
//
// Optional transitions: garbage collection (unreachable heap bindings
// removed; a run is recorded only when it removed something) and stack chain
// removal (two adjacent update markers merge, the top one survives).

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ast.hpp"

namespace lrp {

enum class GcMode : uint8_t { Eager, EveryN, Never };

struct RunConfig {
  GcMode gc_mode = GcMode::Eager;
  uint64_t gc_every = 1;          // EveryN: run GC after every n-th transition
  bool screm = true;              // stack chain removal
  uint64_t max_steps = 10000000;  // bound on mlnall
  bool record_trace = false;
  bool paranoid_gc = false;       // disable the provably-no-garbage scan skips (tests)
};

enum class MachineRule : uint8_t {
  Init, Unwind1, Unwind2, Unwind3, Lookup, Letrec, Subst, Branch, Seq, Update, Gc, ScRem
};
const char* rule_name(MachineRule r);

struct TraceEntry {
  uint64_t index;  // 1-based, consecutive
  MachineRule rule;
  uint64_t size;
};

struct Measures {
  uint64_t mln = 0;
  uint64_t mlnall = 0;
  uint64_t mspmax = 0;
  uint64_t gc_runs = 0;
  uint64_t screm_steps = 0;
};

enum class Outcome : uint8_t { Final, Blackhole, StepLimit };
const char* outcome_name(Outcome o);

struct RunResult {
  Outcome outcome;
  Measures meas;
  ExprPtr control;  // final control expression
  std::vector<TraceEntry> trace;
};

struct MachineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EntryKind : uint8_t { AppArg, SeqArg, CaseAlts, Update };

struct StackEntry {
  EntryKind kind;
  Name var = 0;        // AppArg, SeqArg, Update
  ExprPtr case_node;   // CaseAlts
  uint64_t weight = 0;
};

struct MachineState {
  std::unordered_map<Name, ExprPtr> heap;
  uint64_t heap_size = 0;
  ExprPtr control;
  std::vector<StackEntry> stack;  // back() is the top
  uint64_t stack_size = 0;
  NameSupply names;
  std::unordered_set<Name> pending;  // names with an update marker on the stack

  // gc working state
  std::unordered_map<Name, uint32_t> stack_refs;
  std::vector<uint32_t> stamp;
  uint32_t epoch = 0;
  bool maybe_garbage = true;

  uint64_t size() const;
};

enum class StepStatus : uint8_t { Stepped, Final, Blackhole };

MachineState init_state(const ExprPtr& e);
StepStatus step(MachineState& st, MachineRule& rule_out);
uint64_t collect_garbage(MachineState& st);       // bindings removed
uint64_t stack_chain_removal(MachineState& st);   // merges performed

RunResult run(const ExprPtr& e, const RunConfig& cfg = {});

} // namespace lrp
