#pragma once
// Small-step normal-order calculus on source expressions. Serves as the
// reference the machine is validated against: rln counts the essential
// beta/case/seq steps, rlnall counts every non-gc step, spmax is the maximum
// expression size along the no-gc reduction sequence.
//
// The gc-first strategy removes the maximal set of unreachable top-letrec
// bindings (collapsing the letrec when everything goes) before each
// reduction; it performs the same reductions as the plain strategy.

#include <string>
#include <vector>

#include "ast.hpp"

namespace lrp {

enum class Strategy : uint8_t { Lrp, Lrpgc };

enum class CalcRule : uint8_t {
  Init,
  Lbeta, CpIn, CpE,
  LletIn, LletE, Lapp, Lcase, Lseq,
  SeqC, SeqIn, SeqE,
  CaseC, CaseIn, CaseE,
  GcTop
};
const char* calc_rule_name(CalcRule r);
bool counts_for_rln(CalcRule r);

struct RedexInfo {
  CalcRule rule;
  std::vector<uint32_t> path;  // to the node the rule rewrites (letrec child
                               // indices: 0..n-1 bindings, n body; case: 0
                               // scrutinee, 1+i alternative i)
  std::vector<Name> chain;     // variable chain, demand occurrence first
  uint32_t alt_index = 0;      // case rules
};

enum class FindStatus : uint8_t { Redex, Whnf, Stuck, Divergent };

struct FindResult {
  FindStatus status;
  RedexInfo redex;
  std::string stuck_reason;
};

FindResult find_redex(const ExprPtr& e);
ExprPtr apply_rule(const ExprPtr& e, const RedexInfo& info, NameSupply& ns);

// Child lookup along a RedexInfo-style path.
ExprPtr node_at(const ExprPtr& e, const std::vector<uint32_t>& path);

enum class OracleOutcome : uint8_t { Whnf, StepLimit, Divergent, Stuck };
const char* oracle_outcome_name(OracleOutcome o);

struct OracleTraceEntry {
  uint64_t index;
  CalcRule rule;
  uint64_t size;
};

struct OracleResult {
  OracleOutcome outcome;
  uint64_t rln = 0;
  uint64_t rlnall = 0;
  uint64_t spmax = 0;
  uint64_t gc_steps = 0;
  ExprPtr final_expr;
  std::vector<OracleTraceEntry> trace;
  std::string stuck_reason;
};

OracleResult evaluate(const ExprPtr& e, Strategy strategy, uint64_t max_steps,
                      bool record_trace = false);

// Head of a weak head normal form: constructor name or "\\" for an
// abstraction (empty for non-WHNF results). Used to compare outcomes.
std::string whnf_head(const ExprPtr& e);

} // namespace lrp
