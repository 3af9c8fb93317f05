// Command-line front end. Talks to the library exclusively through the C
// interface in lrp.h.
//
// Exit codes: 0 success / finished, 1 parse, compile or comparison failure,
// 2 blackhole or divergence, 3 step limit reached.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lrp.h"

namespace {

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { lrp_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

using ProgramPtr = std::unique_ptr<lrp_program, decltype(&lrp_program_free)>;
using ExprPtr = std::unique_ptr<lrp_expr, decltype(&lrp_expr_free)>;
using RunPtr = std::unique_ptr<lrp_run, decltype(&lrp_run_free)>;
using OraclePtr = std::unique_ptr<lrp_oracle, decltype(&lrp_oracle_free)>;

int fail_status(lrp_status s) {
  std::fprintf(stderr, "error: %s\n", lrp_last_error());
  (void)s;
  return 1;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

struct CommonOpts {
  std::string gc_mode = "eager";
  bool no_screm = false;
  uint64_t max_steps = 10000000;
  std::string prelude_path;
  bool no_prelude = false;
  uint64_t seed = 0;  // accepted for interface stability; evaluation is
                      // deterministic and ignores it
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_machine_opts) {
  if (with_machine_opts) {
    cmd->add_option("--gc-mode", o.gc_mode,
                    "eager, never, or every:N (collect after every n-th step)")
        ->default_str("eager");
    cmd->add_flag("--no-screm", o.no_screm,
                  "disable update-marker chain removal");
  }
  cmd->add_option("--max-steps", o.max_steps, "transition bound")
      ->default_str("10000000");
  cmd->add_option("--prelude", o.prelude_path,
                  "file with definitions replacing the built-in prelude");
  cmd->add_flag("--no-prelude", o.no_prelude, "no built-in definitions");
  cmd->add_option("--seed", o.seed,
                  "accepted and ignored; evaluation is deterministic");
}

bool make_config(const CommonOpts& o, lrp_run_config& cfg, std::string& err) {
  lrp_run_config_default(&cfg);
  cfg.screm = o.no_screm ? 0 : 1;
  cfg.max_steps = o.max_steps;
  if (o.gc_mode == "eager") {
    cfg.gc_mode = LRP_GC_EAGER;
  } else if (o.gc_mode == "never") {
    cfg.gc_mode = LRP_GC_NEVER;
  } else if (o.gc_mode.rfind("every:", 0) == 0) {
    cfg.gc_mode = LRP_GC_EVERY_N;
    try {
      cfg.gc_every = std::stoull(o.gc_mode.substr(6));
    } catch (...) {
      err = "bad --gc-mode interval: " + o.gc_mode;
      return false;
    }
    if (cfg.gc_every == 0) {
      err = "--gc-mode every:N needs N >= 1";
      return false;
    }
  } else {
    err = "unknown --gc-mode: " + o.gc_mode;
    return false;
  }
  return true;
}

int parse_input(const std::string& file, const CommonOpts& o,
                ProgramPtr& out) {
  std::string src;
  if (!read_file(file, src)) {
    std::fprintf(stderr, "error: cannot read %s\n", file.c_str());
    return 1;
  }
  lrp_program* p = nullptr;
  lrp_status s;
  if (!o.prelude_path.empty()) {
    std::string pre;
    if (!read_file(o.prelude_path, pre)) {
      std::fprintf(stderr, "error: cannot read %s\n", o.prelude_path.c_str());
      return 1;
    }
    s = lrp_parse_custom_prelude(src.c_str(), pre.c_str(), &p);
  } else {
    s = lrp_parse(src.c_str(), o.no_prelude ? 0 : 1, &p);
  }
  if (s != LRP_OK) return fail_status(s);
  out = ProgramPtr(p, lrp_program_free);
  return 0;
}

// "csv:PATH" or "tikz:PATH"; PATH "-" writes to stdout.
bool write_trace(const std::string& spec, const lrp_run* run,
                 const lrp_oracle* oracle, std::string& err) {
  size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    err = "trace spec must be csv:PATH or tikz:PATH";
    return false;
  }
  std::string fmt = spec.substr(0, colon);
  std::string path = spec.substr(colon + 1);
  if (fmt != "csv" && fmt != "tikz") {
    err = "unknown trace format: " + fmt;
    return false;
  }
  OwnedString text;
  lrp_status s;
  if (run)
    s = fmt == "csv" ? lrp_run_trace_csv(run, &text.s)
                     : lrp_run_trace_tikz(run, &text.s);
  else
    s = fmt == "csv" ? lrp_oracle_trace_csv(oracle, &text.s)
                     : lrp_oracle_trace_tikz(oracle, &text.s);
  if (s != LRP_OK) {
    err = lrp_last_error();
    return false;
  }
  if (path == "-") {
    std::fputs(text.s, stdout);
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err = "cannot write " + path;
    return false;
  }
  f << text.s;
  return true;
}

const char* outcome_str(int oc) {
  switch (oc) {
    case LRP_OUTCOME_FINAL:     return "final";
    case LRP_OUTCOME_BLACKHOLE: return "blackhole";
    default:                    return "step-limit";
  }
}

const char* oracle_outcome_str(int oc) {
  switch (oc) {
    case LRP_ORACLE_WHNF:       return "whnf";
    case LRP_ORACLE_STEP_LIMIT: return "step-limit";
    case LRP_ORACLE_DIVERGENT:  return "divergent";
    default:                    return "stuck";
  }
}

int outcome_exit(int oc) {
  switch (oc) {
    case LRP_OUTCOME_FINAL:     return 0;
    case LRP_OUTCOME_BLACKHOLE: return 2;
    default:                    return 3;
  }
}

int oracle_outcome_exit(int oc) {
  switch (oc) {
    case LRP_ORACLE_WHNF:      return 0;
    case LRP_ORACLE_STUCK:     return 1;
    case LRP_ORACLE_DIVERGENT: return 2;
    default:                   return 3;
  }
}

int do_machine_run(const std::string& file, const CommonOpts& o,
                   const std::string& trace_spec, RunPtr& out) {
  ProgramPtr prog(nullptr, lrp_program_free);
  if (int rc = parse_input(file, o, prog)) return rc;

  lrp_run_config cfg;
  std::string err;
  if (!make_config(o, cfg, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }
  cfg.record_trace = trace_spec.empty() ? 0 : 1;

  lrp_expr* me = nullptr;
  lrp_status s = lrp_compile(prog.get(), &me);
  if (s != LRP_OK) return fail_status(s);
  ExprPtr expr(me, lrp_expr_free);

  lrp_run* r = nullptr;
  s = lrp_machine_run(expr.get(), &cfg, &r);
  if (s != LRP_OK) return fail_status(s);
  out = RunPtr(r, lrp_run_free);

  if (!trace_spec.empty() && !write_trace(trace_spec, out.get(), nullptr, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }
  return 0;
}

void print_run(const lrp_run* r) {
  OwnedString head;
  lrp_run_whnf_head(r, &head.s);
  std::string h = head.str();
  std::printf("outcome: %s\n", outcome_str(lrp_run_outcome(r)));
  std::printf("whnf: %s\n", h.empty() ? "-" : h.c_str());
  std::printf("mln: %llu\n", (unsigned long long)lrp_run_mln(r));
  std::printf("mlnall: %llu\n", (unsigned long long)lrp_run_mlnall(r));
  std::printf("mspmax: %llu\n", (unsigned long long)lrp_run_mspmax(r));
  std::printf("gc-runs: %llu\n", (unsigned long long)lrp_run_gc_runs(r));
  std::printf("screm-steps: %llu\n",
              (unsigned long long)lrp_run_screm_steps(r));
}

int cmd_run(const std::string& file, const CommonOpts& o,
            const std::string& trace_spec) {
  RunPtr r(nullptr, lrp_run_free);
  if (int rc = do_machine_run(file, o, trace_spec, r)) return rc;
  print_run(r.get());
  return outcome_exit(lrp_run_outcome(r.get()));
}

int cmd_compile(const std::string& file, const CommonOpts& o,
                const std::string& stage) {
  ProgramPtr prog(nullptr, lrp_program_free);
  if (int rc = parse_input(file, o, prog)) return rc;

  lrp_expr* e = nullptr;
  lrp_status s;
  if (stage == "source") {
    s = lrp_source_expr(prog.get(), &e);
  } else if (stage == "full") {
    s = lrp_compile(prog.get(), &e);
  } else if (stage == "named" || stage == "nochains") {
    lrp_expr* src = nullptr;
    s = lrp_source_expr(prog.get(), &src);
    if (s == LRP_OK) {
      ExprPtr guard(src, lrp_expr_free);
      s = lrp_translate(guard.get(), &e);
      if (s == LRP_OK && stage == "nochains") {
        ExprPtr named(e, lrp_expr_free);
        e = nullptr;
        s = lrp_remove_indirections(named.get(), &e);
      }
    }
  } else {
    std::fprintf(stderr, "error: unknown --stage: %s\n", stage.c_str());
    return 1;
  }
  if (s != LRP_OK) return fail_status(s);
  ExprPtr expr(e, lrp_expr_free);

  OwnedString text;
  s = lrp_expr_print(expr.get(), &text.s);
  if (s != LRP_OK) return fail_status(s);
  std::printf("%s\n", text.s);
  return 0;
}

int cmd_oracle(const std::string& file, const CommonOpts& o,
               const std::string& strategy, const std::string& trace_spec) {
  ProgramPtr prog(nullptr, lrp_program_free);
  if (int rc = parse_input(file, o, prog)) return rc;

  int strat;
  if (strategy == "plain") {
    strat = LRP_STRATEGY_PLAIN;
  } else if (strategy == "gc") {
    strat = LRP_STRATEGY_GC;
  } else {
    std::fprintf(stderr, "error: unknown --strategy: %s\n", strategy.c_str());
    return 1;
  }

  lrp_expr* e = nullptr;
  lrp_status s = lrp_source_expr(prog.get(), &e);
  if (s != LRP_OK) return fail_status(s);
  ExprPtr expr(e, lrp_expr_free);

  lrp_oracle* r = nullptr;
  s = lrp_oracle_run(expr.get(), strat, o.max_steps,
                     trace_spec.empty() ? 0 : 1, &r);
  if (s != LRP_OK) return fail_status(s);
  OraclePtr res(r, lrp_oracle_free);

  if (!trace_spec.empty()) {
    std::string err;
    if (!write_trace(trace_spec, nullptr, res.get(), err)) {
      std::fprintf(stderr, "error: %s\n", err.c_str());
      return 1;
    }
  }

  OwnedString head;
  lrp_oracle_whnf_head(res.get(), &head.s);
  std::string h = head.str();
  int oc = lrp_oracle_outcome_of(res.get());
  std::printf("outcome: %s\n", oracle_outcome_str(oc));
  std::printf("whnf: %s\n", h.empty() ? "-" : h.c_str());
  std::printf("rln: %llu\n", (unsigned long long)lrp_oracle_rln(res.get()));
  std::printf("rlnall: %llu\n",
              (unsigned long long)lrp_oracle_rlnall(res.get()));
  std::printf("spmax: %llu\n",
              (unsigned long long)lrp_oracle_spmax(res.get()));
  std::printf("gc-steps: %llu\n",
              (unsigned long long)lrp_oracle_gc_steps(res.get()));
  return oracle_outcome_exit(oc);
}

// Runs the machine and the calculus on the same compiled expression and
// checks the time measure, the space measure (exact only under eager
// collection with chain removal) and the result head against each other.
int cmd_compare(const std::string& file, const CommonOpts& o) {
  ProgramPtr prog(nullptr, lrp_program_free);
  if (int rc = parse_input(file, o, prog)) return rc;

  lrp_run_config cfg;
  std::string err;
  if (!make_config(o, cfg, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }

  lrp_expr* me = nullptr;
  lrp_status s = lrp_compile(prog.get(), &me);
  if (s != LRP_OK) return fail_status(s);
  ExprPtr expr(me, lrp_expr_free);

  lrp_run* mr = nullptr;
  s = lrp_machine_run(expr.get(), &cfg, &mr);
  if (s != LRP_OK) return fail_status(s);
  RunPtr run(mr, lrp_run_free);

  // The machine collects eagerly, so the comparable calculus sequence is the
  // gc-priority one; the time measure is strategy-independent anyway.
  lrp_oracle* orr = nullptr;
  s = lrp_oracle_run(expr.get(), LRP_STRATEGY_GC, o.max_steps, 0, &orr);
  if (s != LRP_OK) return fail_status(s);
  OraclePtr oracle(orr, lrp_oracle_free);

  OwnedString mh, oh;
  lrp_run_whnf_head(run.get(), &mh.s);
  lrp_oracle_whnf_head(oracle.get(), &oh.s);
  std::string mhead = mh.str(), ohead = oh.str();

  int moc = lrp_run_outcome(run.get());
  int ooc = lrp_oracle_outcome_of(oracle.get());
  std::printf("machine: outcome=%s whnf=%s mln=%llu mlnall=%llu mspmax=%llu\n",
              outcome_str(moc), mhead.empty() ? "-" : mhead.c_str(),
              (unsigned long long)lrp_run_mln(run.get()),
              (unsigned long long)lrp_run_mlnall(run.get()),
              (unsigned long long)lrp_run_mspmax(run.get()));
  std::printf("calculus: outcome=%s whnf=%s rln=%llu rlnall=%llu spmax=%llu\n",
              oracle_outcome_str(ooc), ohead.empty() ? "-" : ohead.c_str(),
              (unsigned long long)lrp_oracle_rln(oracle.get()),
              (unsigned long long)lrp_oracle_rlnall(oracle.get()),
              (unsigned long long)lrp_oracle_spmax(oracle.get()));

  if (moc == LRP_OUTCOME_STEP_LIMIT || ooc == LRP_ORACLE_STEP_LIMIT) {
    std::printf("agree: undecided\n");
    return 3;
  }
  bool both_diverge =
      moc == LRP_OUTCOME_BLACKHOLE && ooc == LRP_ORACLE_DIVERGENT;
  if (both_diverge) {
    std::printf("agree: yes (divergence)\n");
    return 2;
  }
  if (moc != LRP_OUTCOME_FINAL || ooc != LRP_ORACLE_WHNF) {
    std::printf("agree: no\n");
    return 1;
  }

  bool time_ok = lrp_run_mln(run.get()) == lrp_oracle_rln(oracle.get());
  bool head_ok = mhead == ohead;
  bool space_applies = cfg.gc_mode == LRP_GC_EAGER && cfg.screm != 0;
  bool space_ok = !space_applies ||
                  lrp_run_mspmax(run.get()) == lrp_oracle_spmax(oracle.get());
  std::printf("mln=rln: %s\n", time_ok ? "yes" : "no");
  if (space_applies)
    std::printf("mspmax=spmax: %s\n", space_ok ? "yes" : "no");
  else
    std::printf("mspmax=spmax: skipped (needs eager gc with chain removal)\n");
  std::printf("head-match: %s\n", head_ok ? "yes" : "no");
  bool ok = time_ok && head_ok && space_ok;
  std::printf("agree: %s\n", ok ? "yes" : "no");
  return ok ? 0 : 1;
}

// Accepts "K", "A..B" or "A..B:S".
bool parse_krange(const std::string& s, uint64_t& kmin, uint64_t& kmax,
                  uint64_t& kstep) {
  size_t dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      kmin = kmax = std::stoull(s);
      kstep = 1;
      return true;
    }
    kmin = std::stoull(s.substr(0, dots));
    std::string rest = s.substr(dots + 2);
    size_t colon = rest.find(':');
    kmax = std::stoull(rest.substr(0, colon));
    kstep = colon == std::string::npos ? 1 : std::stoull(rest.substr(colon + 1));
    return kstep > 0 && kmax >= kmin;
  } catch (...) {
    return false;
  }
}

int emit_one_bench(const char* experiment, const std::vector<uint64_t>& ks,
                   bool csv, const lrp_run_config& cfg, bool label) {
  OwnedString text;
  lrp_status s = csv ? lrp_bench_csv(experiment, ks.data(), ks.size(), &cfg,
                                     &text.s)
                     : lrp_bench_text(experiment, ks.data(), ks.size(), &cfg,
                                      &text.s);
  if (s != LRP_OK) return fail_status(s);
  if (csv && label) std::printf("# %s\n", experiment);
  std::fputs(text.s, stdout);
  return 0;
}

int cmd_bench(const std::string& experiment, const std::string& krange,
              uint64_t kmin, uint64_t kmax, uint64_t kstep, bool csv,
              const CommonOpts& o) {
  lrp_run_config cfg;
  std::string err;
  if (!make_config(o, cfg, err)) {
    std::fprintf(stderr, "error: %s\n", err.c_str());
    return 1;
  }
  if (!krange.empty() && !parse_krange(krange, kmin, kmax, kstep)) {
    std::fprintf(stderr, "error: bad --k range: %s\n", krange.c_str());
    return 1;
  }
  if (kmax < kmin) kmax = kmin;
  if (kstep == 0) kstep = 1;
  std::vector<uint64_t> ks;
  for (uint64_t k = kmin; k <= kmax; k += kstep) ks.push_back(k);

  // Grouped studies mirror the published tables; "fusion" is the difference
  // table unfused minus fused with one space column per gc mode.
  if (experiment == "fold" || experiment == "append") {
    std::vector<const char*> parts =
        experiment == "fold"
            ? std::vector<const char*>{"foldl", "foldl'", "foldr"}
            : std::vector<const char*>{"shared", "unshared"};
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) std::printf("\n");
      if (int rc = emit_one_bench(parts[i], ks, csv, cfg, true)) return rc;
    }
    return 0;
  }
  if (experiment == "fusion") {
    OwnedString text;
    lrp_status s = csv ? lrp_diff_csv("unfused", "fused", ks.data(), ks.size(),
                                      &cfg, &text.s)
                       : lrp_diff_text("unfused", "fused", ks.data(),
                                       ks.size(), &cfg, &text.s);
    if (s != LRP_OK) return fail_status(s);
    std::fputs(text.s, stdout);
    return 0;
  }
  return emit_one_bench(experiment.c_str(), ks, csv, cfg, false);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lazy evaluation with exact time and space measurement"};
  app.require_subcommand(1);

  CommonOpts run_o, compile_o, trace_o, oracle_o, compare_o, bench_o;
  std::string run_file, compile_file, trace_file, oracle_file, compare_file;
  std::string run_trace, trace_spec = "csv:-", oracle_trace;
  std::string compile_stage = "full";
  std::string oracle_strategy = "gc";
  std::string bench_experiment, bench_krange;
  uint64_t bench_kmin = 0, bench_kmax = 0, bench_kstep = 1;
  bool bench_csv = false;

  CLI::App* c_run = app.add_subcommand(
      "run", "compile and run a program on the abstract machine");
  c_run->add_option("file", run_file, "program file")->required();
  add_common(c_run, run_o, true);
  c_run->add_option("--trace-out", run_trace,
                    "write the state trace, csv:PATH or tikz:PATH");

  CLI::App* c_compile =
      app.add_subcommand("compile", "print the compiled expression");
  c_compile->add_option("file", compile_file, "program file")->required();
  add_common(c_compile, compile_o, false);
  c_compile->add_option(
      "--stage", compile_stage,
      "source, named (argument naming only), nochains, or full");

  CLI::App* c_trace = app.add_subcommand(
      "trace", "run on the machine and emit the state-size trace");
  c_trace->add_option("file", trace_file, "program file")->required();
  add_common(c_trace, trace_o, true);
  c_trace->add_option("--trace-out", trace_spec,
                      "csv:PATH or tikz:PATH, PATH - for stdout")
      ->default_str("csv:-");

  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "reduce with the calculus and report rln/rlnall/spmax");
  c_oracle->add_option("file", oracle_file, "program file")->required();
  add_common(c_oracle, oracle_o, false);
  c_oracle->add_option("--strategy", oracle_strategy,
                       "plain (no gc between reductions) or gc")
      ->default_str("gc");
  c_oracle->add_option("--trace-out", oracle_trace,
                       "write the size trace, csv:PATH or tikz:PATH");

  CLI::App* c_compare = app.add_subcommand(
      "compare", "machine and calculus on the same compiled expression");
  c_compare->add_option("file", compare_file, "program file")->required();
  add_common(c_compare, compare_o, true);

  CLI::App* c_bench =
      app.add_subcommand("bench", "measure a built-in benchmark family");
  c_bench
      ->add_option("experiment", bench_experiment,
                   "foldl, foldl', foldr, reverse, reverse', fused, unfused, "
                   "shared, unshared, or a study: fold, append, fusion "
                   "(difference table)")
      ->required();
  c_bench->add_option("--k", bench_krange,
                      "list lengths as K, A..B, or A..B:STEP");
  c_bench->add_option("--k-min", bench_kmin, "first list length");
  c_bench->add_option("--k-max", bench_kmax, "last list length");
  c_bench->add_option("--k-step", bench_kstep, "length increment")
      ->default_str("1");
  c_bench->add_flag("--csv", bench_csv, "emit csv instead of a table");
  add_common(c_bench, bench_o, true);

  CLI11_PARSE(app, argc, argv);

  if (c_run->parsed()) return cmd_run(run_file, run_o, run_trace);
  if (c_compile->parsed())
    return cmd_compile(compile_file, compile_o, compile_stage);
  if (c_trace->parsed()) {
    RunPtr r(nullptr, lrp_run_free);
    if (int rc = do_machine_run(trace_file, trace_o, trace_spec, r)) return rc;
    return outcome_exit(lrp_run_outcome(r.get()));
  }
  if (c_oracle->parsed())
    return cmd_oracle(oracle_file, oracle_o, oracle_strategy, oracle_trace);
  if (c_compare->parsed()) return cmd_compare(compare_file, compare_o);
  if (c_bench->parsed()) {
    if (bench_krange.empty() && c_bench->count("--k-min") == 0) {
      std::fprintf(stderr, "error: bench needs --k or --k-min\n");
      return 1;
    }
    return cmd_bench(bench_experiment, bench_krange, bench_kmin, bench_kmax,
                     bench_kstep, bench_csv, bench_o);
  }
  return 1;
}
