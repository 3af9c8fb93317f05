#include "lrp.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "ast.hpp"
#include "calculus.hpp"
#include "compile.hpp"
#include "harness.hpp"
#include "machine.hpp"
#include "parser.hpp"

using namespace lrp;

struct lrp_program { Program p; };
struct lrp_expr { ExprPtr e; };
struct lrp_run { RunResult r; };
struct lrp_oracle { OracleResult r; };

namespace {

thread_local std::string g_error;

lrp_status fail(lrp_status s, const std::string& msg) {
  g_error = msg;
  return s;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

lrp_status put_string(const std::string& s, char** out) {
  *out = dup_string(s);
  return *out ? LRP_OK : fail(LRP_ERR_INVALID, "out of memory");
}

// Runs f, translating the library's exceptions to status codes.
template <typename F>
lrp_status guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    return fail(LRP_ERR_PARSE, e.what());
  } catch (const CompileError& e) {
    return fail(LRP_ERR_COMPILE, e.what());
  } catch (const MachineError& e) {
    return fail(LRP_ERR_RUNTIME, e.what());
  } catch (const std::exception& e) {
    return fail(LRP_ERR_RUNTIME, e.what());
  }
}

RunConfig to_config(const lrp_run_config* cfg) {
  RunConfig rc;
  if (!cfg) return rc;
  rc.gc_mode = cfg->gc_mode == LRP_GC_NEVER     ? GcMode::Never
               : cfg->gc_mode == LRP_GC_EVERY_N ? GcMode::EveryN
                                                : GcMode::Eager;
  rc.gc_every = cfg->gc_every ? cfg->gc_every : 1;
  rc.screm = cfg->screm != 0;
  rc.max_steps = cfg->max_steps;
  rc.record_trace = cfg->record_trace != 0;
  return rc;
}

lrp_status bench_impl(const char* experiment, const uint64_t* ks, size_t nks,
                      const lrp_run_config* cfg, bool csv, char** out) {
  if (!experiment || !ks || !nks || !out)
    return fail(LRP_ERR_INVALID, "null argument");
  Experiment e;
  if (!experiment_from_name(experiment, e))
    return fail(LRP_ERR_INVALID,
                std::string("unknown experiment: ") + experiment);
  return guarded([&] {
    std::vector<uint64_t> kv(ks, ks + nks);
    BenchTable t = run_bench(e, kv, to_config(cfg));
    return put_string(csv ? bench_csv(t) : bench_text(t), out);
  });
}

lrp_status diff_impl(const char* minuend, const char* subtrahend,
                     const uint64_t* ks, size_t nks,
                     const lrp_run_config* cfg, bool csv, char** out) {
  if (!minuend || !subtrahend || !ks || !nks || !out)
    return fail(LRP_ERR_INVALID, "null argument");
  Experiment a, b;
  if (!experiment_from_name(minuend, a))
    return fail(LRP_ERR_INVALID, std::string("unknown experiment: ") + minuend);
  if (!experiment_from_name(subtrahend, b))
    return fail(LRP_ERR_INVALID,
                std::string("unknown experiment: ") + subtrahend);
  return guarded([&] {
    std::vector<uint64_t> kv(ks, ks + nks);
    DiffTable t = run_diff(a, b, kv, to_config(cfg));
    return put_string(csv ? diff_csv(t) : diff_text(t), out);
  });
}

} // namespace

extern "C" {

const char* lrp_last_error(void) { return g_error.c_str(); }

void lrp_string_free(char* s) { std::free(s); }

lrp_status lrp_parse(const char* src, int with_prelude, lrp_program** out) {
  if (!src || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    Program p = with_prelude ? parse_program_with_prelude(src)
                             : parse_program(src);
    *out = new lrp_program{std::move(p)};
    return LRP_OK;
  });
}

lrp_status lrp_parse_custom_prelude(const char* src, const char* prelude_src,
                                    lrp_program** out) {
  if (!src || !prelude_src || !out)
    return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    std::vector<Def> defs = parse_defs(prelude_src, "<prelude>");
    Program p = parse_program_with_prelude(src, "<input>", &defs);
    *out = new lrp_program{std::move(p)};
    return LRP_OK;
  });
}

lrp_status lrp_parse_expr(const char* src, lrp_expr** out) {
  if (!src || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_expr{parse_expr_string(src)};
    return LRP_OK;
  });
}

void lrp_program_free(lrp_program* p) { delete p; }

lrp_status lrp_compile(const lrp_program* p, lrp_expr** out) {
  if (!p || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_expr{compile_program(p->p)};
    return LRP_OK;
  });
}

lrp_status lrp_source_expr(const lrp_program* p, lrp_expr** out) {
  if (!p || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_expr{source_expr(p->p)};
    return LRP_OK;
  });
}

lrp_status lrp_translate(const lrp_expr* e, lrp_expr** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    NameSupply ns;
    ns.seed(*e->e);
    *out = new lrp_expr{translate(e->e, ns)};
    return LRP_OK;
  });
}

lrp_status lrp_remove_indirections(const lrp_expr* e, lrp_expr** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_expr{remove_indirections(e->e)};
    return LRP_OK;
  });
}

lrp_status lrp_static_gc(const lrp_expr* e, lrp_expr** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_expr{static_gc(e->e)};
    return LRP_OK;
  });
}

lrp_status lrp_expr_print(const lrp_expr* e, char** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return put_string(print_expr(*e->e), out);
}

uint64_t lrp_expr_size(const lrp_expr* e) { return e ? e->e->size : 0; }

void lrp_expr_free(lrp_expr* e) { delete e; }

void lrp_run_config_default(lrp_run_config* cfg) {
  if (!cfg) return;
  RunConfig rc;
  cfg->gc_mode = LRP_GC_EAGER;
  cfg->gc_every = rc.gc_every;
  cfg->screm = rc.screm ? 1 : 0;
  cfg->max_steps = rc.max_steps;
  cfg->record_trace = 0;
}

lrp_status lrp_machine_run(const lrp_expr* e, const lrp_run_config* cfg,
                           lrp_run** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    *out = new lrp_run{run(e->e, to_config(cfg))};
    return LRP_OK;
  });
}

int lrp_run_outcome(const lrp_run* r) {
  if (!r) return LRP_OUTCOME_STEP_LIMIT;
  switch (r->r.outcome) {
    case Outcome::Final:     return LRP_OUTCOME_FINAL;
    case Outcome::Blackhole: return LRP_OUTCOME_BLACKHOLE;
    case Outcome::StepLimit: return LRP_OUTCOME_STEP_LIMIT;
  }
  return LRP_OUTCOME_STEP_LIMIT;
}

uint64_t lrp_run_mln(const lrp_run* r) { return r ? r->r.meas.mln : 0; }
uint64_t lrp_run_mlnall(const lrp_run* r) { return r ? r->r.meas.mlnall : 0; }
uint64_t lrp_run_mspmax(const lrp_run* r) { return r ? r->r.meas.mspmax : 0; }
uint64_t lrp_run_gc_runs(const lrp_run* r) { return r ? r->r.meas.gc_runs : 0; }
uint64_t lrp_run_screm_steps(const lrp_run* r) {
  return r ? r->r.meas.screm_steps : 0;
}

lrp_status lrp_run_whnf_head(const lrp_run* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  std::string head;
  if (r->r.outcome == Outcome::Final && r->r.control)
    head = whnf_head(r->r.control);
  return put_string(head, out);
}

size_t lrp_run_trace_len(const lrp_run* r) {
  return r ? r->r.trace.size() : 0;
}

lrp_status lrp_run_trace_csv(const lrp_run* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  return put_string(trace_csv(to_rows(r->r.trace)), out);
}

lrp_status lrp_run_trace_tikz(const lrp_run* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  return put_string(trace_tikz(to_rows(r->r.trace)), out);
}

void lrp_run_free(lrp_run* r) { delete r; }

lrp_status lrp_oracle_run(const lrp_expr* e, int strategy, uint64_t max_steps,
                          int record_trace, lrp_oracle** out) {
  if (!e || !out) return fail(LRP_ERR_INVALID, "null argument");
  return guarded([&] {
    Strategy st =
        strategy == LRP_STRATEGY_GC ? Strategy::Lrpgc : Strategy::Lrp;
    *out = new lrp_oracle{evaluate(e->e, st, max_steps, record_trace != 0)};
    return LRP_OK;
  });
}

int lrp_oracle_outcome_of(const lrp_oracle* r) {
  if (!r) return LRP_ORACLE_STUCK;
  switch (r->r.outcome) {
    case OracleOutcome::Whnf:      return LRP_ORACLE_WHNF;
    case OracleOutcome::StepLimit: return LRP_ORACLE_STEP_LIMIT;
    case OracleOutcome::Divergent: return LRP_ORACLE_DIVERGENT;
    case OracleOutcome::Stuck:     return LRP_ORACLE_STUCK;
  }
  return LRP_ORACLE_STUCK;
}

uint64_t lrp_oracle_rln(const lrp_oracle* r) { return r ? r->r.rln : 0; }
uint64_t lrp_oracle_rlnall(const lrp_oracle* r) { return r ? r->r.rlnall : 0; }
uint64_t lrp_oracle_spmax(const lrp_oracle* r) { return r ? r->r.spmax : 0; }
uint64_t lrp_oracle_gc_steps(const lrp_oracle* r) {
  return r ? r->r.gc_steps : 0;
}

lrp_status lrp_oracle_whnf_head(const lrp_oracle* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  std::string head;
  if (r->r.outcome == OracleOutcome::Whnf && r->r.final_expr)
    head = whnf_head(r->r.final_expr);
  return put_string(head, out);
}

size_t lrp_oracle_trace_len(const lrp_oracle* r) {
  return r ? r->r.trace.size() : 0;
}

lrp_status lrp_oracle_trace_csv(const lrp_oracle* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  return put_string(trace_csv(to_rows(r->r.trace)), out);
}

lrp_status lrp_oracle_trace_tikz(const lrp_oracle* r, char** out) {
  if (!r || !out) return fail(LRP_ERR_INVALID, "null argument");
  return put_string(trace_tikz(to_rows(r->r.trace)), out);
}

void lrp_oracle_free(lrp_oracle* r) { delete r; }

lrp_status lrp_experiment_source(const char* experiment, uint64_t k,
                                 char** out_src) {
  if (!experiment || !out_src) return fail(LRP_ERR_INVALID, "null argument");
  Experiment e;
  if (!experiment_from_name(experiment, e))
    return fail(LRP_ERR_INVALID,
                std::string("unknown experiment: ") + experiment);
  return put_string(experiment_source(e, k), out_src);
}

lrp_status lrp_bench_csv(const char* experiment, const uint64_t* ks,
                         size_t nks, const lrp_run_config* cfg,
                         char** out_csv) {
  return bench_impl(experiment, ks, nks, cfg, true, out_csv);
}

lrp_status lrp_bench_text(const char* experiment, const uint64_t* ks,
                          size_t nks, const lrp_run_config* cfg,
                          char** out_text) {
  return bench_impl(experiment, ks, nks, cfg, false, out_text);
}

lrp_status lrp_gen_list_source(uint64_t k, const char* shape, char** out_src) {
  if (!shape || !out_src) return fail(LRP_ERR_INVALID, "null argument");
  std::string s = shape;
  GenShape g;
  if (s == "one-true-then-false") g = GenShape::OneTrueThenFalse;
  else if (s == "all-true") g = GenShape::AllTrue;
  else if (s == "inner-pairs") g = GenShape::InnerPairs;
  else return fail(LRP_ERR_INVALID, "unknown list shape: " + s);
  return put_string(gen_list_source(k, g), out_src);
}

lrp_status lrp_diff_csv(const char* minuend, const char* subtrahend,
                        const uint64_t* ks, size_t nks,
                        const lrp_run_config* cfg, char** out_csv) {
  return diff_impl(minuend, subtrahend, ks, nks, cfg, true, out_csv);
}

lrp_status lrp_diff_text(const char* minuend, const char* subtrahend,
                         const uint64_t* ks, size_t nks,
                         const lrp_run_config* cfg, char** out_text) {
  return diff_impl(minuend, subtrahend, ks, nks, cfg, false, out_text);
}

} // extern "C"
