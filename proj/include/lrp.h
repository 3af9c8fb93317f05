/* C interface to the lazy-evaluation measurement library.
 *
 * Handles are opaque; every constructor hands ownership to the caller, who
 * releases it with the matching _free function. Functions returning
 * lrp_status set a thread-local message readable via lrp_last_error() on
 * failure. Strings returned through char** are malloc'd; release them with
 * lrp_string_free.
 */
#ifndef LRP_H
#define LRP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrp_status {
  LRP_OK = 0,
  LRP_ERR_PARSE = 1,
  LRP_ERR_COMPILE = 2,
  LRP_ERR_RUNTIME = 3,
  LRP_ERR_INVALID = 4
} lrp_status;

typedef enum lrp_gc_mode {
  LRP_GC_EAGER = 0,
  LRP_GC_EVERY_N = 1,
  LRP_GC_NEVER = 2
} lrp_gc_mode;

typedef enum lrp_outcome {
  LRP_OUTCOME_FINAL = 0,
  LRP_OUTCOME_BLACKHOLE = 1,
  LRP_OUTCOME_STEP_LIMIT = 2
} lrp_outcome;

typedef enum lrp_oracle_outcome {
  LRP_ORACLE_WHNF = 0,
  LRP_ORACLE_STEP_LIMIT = 1,
  LRP_ORACLE_DIVERGENT = 2,
  LRP_ORACLE_STUCK = 3
} lrp_oracle_outcome;

typedef enum lrp_strategy {
  LRP_STRATEGY_PLAIN = 0, /* no garbage collection between reductions */
  LRP_STRATEGY_GC = 1     /* unreachable top-letrec bindings removed first */
} lrp_strategy;

typedef struct lrp_program lrp_program;
typedef struct lrp_expr lrp_expr;
typedef struct lrp_run lrp_run;
typedef struct lrp_oracle lrp_oracle;

const char* lrp_last_error(void);
void lrp_string_free(char* s);

/* ---- parsing ---- */

lrp_status lrp_parse(const char* src, int with_prelude, lrp_program** out);
lrp_status lrp_parse_custom_prelude(const char* src, const char* prelude_src,
                                    lrp_program** out);
lrp_status lrp_parse_expr(const char* src, lrp_expr** out);
void lrp_program_free(lrp_program* p);

/* ---- expressions ---- */

/* Full pipeline: wrap definitions around main, rename apart, name the
 * arguments of applications/seqs/constructors, remove variable-to-variable
 * chains and unreachable bindings. The result is a machine expression. */
lrp_status lrp_compile(const lrp_program* p, lrp_expr** out);

/* Same wrapping and renaming but no argument naming: the expression the
 * calculus evaluates. */
lrp_status lrp_source_expr(const lrp_program* p, lrp_expr** out);

lrp_status lrp_translate(const lrp_expr* e, lrp_expr** out);
lrp_status lrp_remove_indirections(const lrp_expr* e, lrp_expr** out);
lrp_status lrp_static_gc(const lrp_expr* e, lrp_expr** out);
lrp_status lrp_expr_print(const lrp_expr* e, char** out);
uint64_t lrp_expr_size(const lrp_expr* e);
void lrp_expr_free(lrp_expr* e);

/* ---- abstract machine ---- */

typedef struct lrp_run_config {
  int gc_mode;        /* lrp_gc_mode */
  uint64_t gc_every;  /* LRP_GC_EVERY_N: collect after every n-th step */
  int screm;          /* nonzero: merge adjacent update markers */
  uint64_t max_steps; /* bound on counted transitions */
  int record_trace;
} lrp_run_config;

void lrp_run_config_default(lrp_run_config* cfg);

lrp_status lrp_machine_run(const lrp_expr* e, const lrp_run_config* cfg,
                           lrp_run** out);
int lrp_run_outcome(const lrp_run* r);
uint64_t lrp_run_mln(const lrp_run* r);
uint64_t lrp_run_mlnall(const lrp_run* r);
uint64_t lrp_run_mspmax(const lrp_run* r);
uint64_t lrp_run_gc_runs(const lrp_run* r);
uint64_t lrp_run_screm_steps(const lrp_run* r);
/* "\\" for an abstraction, the constructor name otherwise; "" when the run
 * did not finish. */
lrp_status lrp_run_whnf_head(const lrp_run* r, char** out);
size_t lrp_run_trace_len(const lrp_run* r);
lrp_status lrp_run_trace_csv(const lrp_run* r, char** out);
lrp_status lrp_run_trace_tikz(const lrp_run* r, char** out);
void lrp_run_free(lrp_run* r);

/* ---- reduction calculus ---- */

lrp_status lrp_oracle_run(const lrp_expr* e, int strategy, uint64_t max_steps,
                          int record_trace, lrp_oracle** out);
int lrp_oracle_outcome_of(const lrp_oracle* r);
uint64_t lrp_oracle_rln(const lrp_oracle* r);
uint64_t lrp_oracle_rlnall(const lrp_oracle* r);
uint64_t lrp_oracle_spmax(const lrp_oracle* r);
uint64_t lrp_oracle_gc_steps(const lrp_oracle* r);
lrp_status lrp_oracle_whnf_head(const lrp_oracle* r, char** out);
size_t lrp_oracle_trace_len(const lrp_oracle* r);
lrp_status lrp_oracle_trace_csv(const lrp_oracle* r, char** out);
lrp_status lrp_oracle_trace_tikz(const lrp_oracle* r, char** out);
void lrp_oracle_free(lrp_oracle* r);

/* ---- benchmark families ---- */

/* Experiments: foldl, foldl', foldr, reverse, reverse', fused, unfused,
 * shared, unshared. */
lrp_status lrp_experiment_source(const char* experiment, uint64_t k,
                                 char** out_src);
lrp_status lrp_bench_csv(const char* experiment, const uint64_t* ks,
                         size_t nks, const lrp_run_config* cfg,
                         char** out_csv);
lrp_status lrp_bench_text(const char* experiment, const uint64_t* ks,
                          size_t nks, const lrp_run_config* cfg,
                          char** out_text);

/* Generated input lists: shape is one of "one-true-then-false", "all-true",
 * "inner-pairs". Renders an expression evaluating to the k-element list. */
lrp_status lrp_gen_list_source(uint64_t k, const char* shape, char** out_src);

/* Difference table (minuend minus subtrahend, row-wise) with one space
 * column per garbage-collection mode: eager, every 1000th, every 2000th,
 * never. Time columns come from the eager runs; they are mode-independent. */
lrp_status lrp_diff_csv(const char* minuend, const char* subtrahend,
                        const uint64_t* ks, size_t nks,
                        const lrp_run_config* cfg, char** out_csv);
lrp_status lrp_diff_text(const char* minuend, const char* subtrahend,
                         const uint64_t* ks, size_t nks,
                         const lrp_run_config* cfg, char** out_text);

#ifdef __cplusplus
}
#endif

#endif /* LRP_H */
