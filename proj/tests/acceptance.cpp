// Acceptance gate: twelve checks over the library and the command line
// tool, one verdict line each. Usage: acceptance <cli-path> <samples-dir>.
//
// The property checks draw from the same type-directed generator the unit
// tests use; table checks pin the growth rates of the benchmark families
// and the published anchor values their tolerances allow.

#include <sys/wait.h>

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "compile.hpp"
#include "gen.hpp"
#include "harness.hpp"
#include "machine.hpp"
#include "parser.hpp"

using namespace lrp;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  CmdResult res;
  FILE* f = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!f) return res;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) res.out.append(buf, n);
  int st = pclose(f);
  if (WIFEXITED(st)) res.code = WEXITSTATUS(st);
  return res;
}

int failures = 0;

void verdict(int id, bool pass, const std::string& name, const std::string& detail) {
  if (!pass) failures++;
  std::printf("%2d %s  %s%s%s\n", id, pass ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
}

// Wrap a generated expression the way compiled programs are shaped:
// renamed apart, arguments named, chains and dead bindings removed.
ExprPtr machine_form(const ExprPtr& e) {
  NameSupply ns;
  ns.seed(*e);
  return static_gc(remove_indirections(translate(freshen(e, ns), ns)));
}

// ---- 1: argument naming preserves size ------------------------------------

void check_size_preservation() {
  auto t0 = Clock::now();
  lrpgen::Gen gen(1001);
  int bad = 0;
  const int N = 1000;
  for (int i = 0; i < N; i++) {
    ExprPtr e = gen.closed(8);
    NameSupply ns;
    ns.seed(*e);
    ExprPtr t = translate(freshen(e, ns), ns);
    if (t->size != e->size || !is_machine_expr(*t)) bad++;
  }
  double dt = seconds_since(t0);
  char d[128];
  std::snprintf(d, sizeof d, "%d expressions, %d size changes, %.2f s", N, bad, dt);
  verdict(1, bad == 0 && dt < 10.0, "argument naming preserves expression size", d);
}

// ---- 2: machine time equals reduction time ---------------------------------

void check_time_adequacy() {
  lrpgen::Gen gen(1002);
  int converged = 0, bad = 0, tried = 0;
  while (converged < 500 && tried < 6000) {
    tried++;
    ExprPtr e = gen.closed(7);
    NameSupply ns;
    ns.seed(*e);
    ExprPtr f = freshen(e, ns);
    OracleResult o = evaluate(f, Strategy::Lrp, 10000);
    if (o.outcome != OracleOutcome::Whnf) continue;
    converged++;
    ExprPtr t = translate(f, ns);
    RunResult m = run(t);
    if (m.outcome != Outcome::Final || m.meas.mln != o.rln) {
      bad++;
      std::fprintf(stderr, "time mismatch: mln=%" PRIu64 " rln=%" PRIu64 " on\n%s\n",
                   m.meas.mln, o.rln, print_expr(*f).c_str());
    }
  }
  char d[128];
  std::snprintf(d, sizeof d, "%d converging expressions, %d mismatches", converged, bad);
  verdict(2, converged >= 500 && bad == 0,
          "essential machine steps equal essential reduction steps", d);
}

// ---- 3: machine peak space equals reduction peak space ---------------------

bool space_mismatch(const ExprPtr& e) {
  RunConfig cfg;
  cfg.max_steps = 50000;
  RunResult m = run(e, cfg);
  if (m.outcome != Outcome::Final) return false;
  OracleResult o = evaluate(e, Strategy::Lrpgc, 100000);
  if (o.outcome != OracleOutcome::Whnf) return true;  // should not happen
  return m.meas.mspmax != o.spmax;
}

// Greedy structural minimisation: recurse into the smallest closed machine
// subexpression that still shows the mismatch.
ExprPtr minimize_space_counterexample(ExprPtr e) {
  for (;;) {
    std::vector<ExprPtr> cands;
    switch (e->tag) {
      case Tag::Lam: cands.push_back(e->a); break;
      case Tag::App:
      case Tag::Seq:
        cands.push_back(e->a);
        cands.push_back(e->b);
        break;
      case Tag::LetRec:
        cands.push_back(e->b);
        for (const Binding& b : e->binds) cands.push_back(b.rhs);
        break;
      case Tag::Case:
        cands.push_back(e->a);
        for (const Alt& alt : e->alts) cands.push_back(alt.rhs);
        break;
      case Tag::ConApp:
        for (const ExprPtr& a : e->args) cands.push_back(a);
        break;
      default: break;
    }
    if (e->tag == Tag::LetRec) cands.push_back(static_gc(e));
    ExprPtr next;
    for (const ExprPtr& c : cands) {
      if (c == e || !c->fv.empty() || !is_machine_expr(*c)) continue;
      if (space_mismatch(c)) { next = c; break; }
    }
    if (!next) return e;
    e = next;
  }
}

void check_space_adequacy() {
  lrpgen::Gen gen(1003);
  int finals = 0, bad = 0, tried = 0;
  while (finals < 500 && tried < 6000) {
    tried++;
    ExprPtr me = machine_form(gen.closed(7));
    RunConfig cfg;
    cfg.max_steps = 50000;
    RunResult m = run(me, cfg);
    if (m.outcome != Outcome::Final) continue;
    finals++;
    OracleResult o = evaluate(me, Strategy::Lrpgc, 100000);
    if (o.outcome != OracleOutcome::Whnf || m.meas.mspmax != o.spmax) {
      bad++;
      ExprPtr small = minimize_space_counterexample(me);
      RunResult sm = run(small, cfg);
      OracleResult so = evaluate(small, Strategy::Lrpgc, 100000);
      std::fprintf(stderr,
                   "space mismatch: mspmax=%" PRIu64 " spmax=%" PRIu64
                   ", minimized to size %" PRIu64 " (mspmax=%" PRIu64
                   " spmax=%" PRIu64 ")\n%s\n",
                   m.meas.mspmax, o.spmax, small->size, sm.meas.mspmax,
                   so.spmax, print_expr(*small).c_str());
    }
  }
  char d[128];
  std::snprintf(d, sizeof d, "%d machine expressions, %d mismatches", finals, bad);
  verdict(3, finals >= 500 && bad == 0,
          "collected machine peak equals gc-first reduction peak", d);
}

// ---- 4: collection does not change convergence ------------------------------

void check_strategy_equivalence() {
  lrpgen::Gen gen(1004);
  int compared = 0, bad = 0, tried = 0;
  while (compared < 500 && tried < 6000) {
    tried++;
    ExprPtr me = machine_form(gen.closed(7));
    OracleResult plain = evaluate(me, Strategy::Lrp, 100000);
    OracleResult gc = evaluate(me, Strategy::Lrpgc, 100000);
    if (plain.outcome == OracleOutcome::StepLimit ||
        gc.outcome == OracleOutcome::StepLimit)
      continue;  // bound artefact, no convergence verdict
    compared++;
    bool ok = plain.outcome == gc.outcome;
    if (ok && plain.outcome == OracleOutcome::Whnf)
      ok = plain.rln == gc.rln &&
           whnf_head(plain.final_expr) == whnf_head(gc.final_expr);
    if (!ok) {
      bad++;
      std::fprintf(stderr, "strategy mismatch on\n%s\n", print_expr(*me).c_str());
    }
  }
  char d[128];
  std::snprintf(d, sizeof d, "%d expressions, %d disagreements", compared, bad);
  verdict(4, compared >= 500 && bad == 0,
          "plain and collecting reduction agree on convergence and step counts", d);
}

// ---- 5: the seq-before-abstraction pair ------------------------------------

void check_seq_pair() {
  Program p = parse_program_with_prelude("main = (seq True (\\x,y,z. y)) True;");
  OracleResult src = evaluate(source_expr(p), Strategy::Lrpgc, 1000);
  ExprPtr mach = compile_program(p);
  OracleResult named = evaluate(mach, Strategy::Lrpgc, 1000);
  RunResult m = run(mach);
  bool ok = src.outcome == OracleOutcome::Whnf && src.spmax == 7 &&
            named.outcome == OracleOutcome::Whnf && named.spmax == 8 &&
            m.outcome == Outcome::Final && m.meas.mspmax == 8;
  char d[128];
  std::snprintf(d, sizeof d,
                "source peak %" PRIu64 " (want 7), argument-named peak %" PRIu64
                "/%" PRIu64 " (want 8/8)",
                src.spmax, named.spmax, m.meas.mspmax);
  verdict(5, ok, "peak space of the seq example, both program views", d);
}

// ---- 6: fold family ---------------------------------------------------------

void check_fold_tables() {
  auto t0 = Clock::now();
  RunConfig cfg;
  std::vector<uint64_t> ks;
  for (uint64_t k = 25; k <= 250; k += 25) ks.push_back(k);

  struct Want {
    Experiment e;
    uint64_t mln_slope, msp_slope, msp_at_25;
  };
  const Want wants[] = {
      {Experiment::FoldL, 12, 8, 217},
      {Experiment::FoldLStrict, 13, 1, 87},
      {Experiment::FoldR, 11, 1, 90},
  };
  bool ok = true;
  std::string detail;
  for (const Want& w : wants) {
    BenchTable t = run_bench(w.e, ks, cfg);
    for (size_t i = 1; i < t.rows.size(); i++) {
      uint64_t dmln = t.rows[i].mln - t.rows[i - 1].mln;
      uint64_t dmsp = t.rows[i].mspmax - t.rows[i - 1].mspmax;
      if (dmln != w.mln_slope * 25 || dmsp != w.msp_slope * 25) ok = false;
    }
    int64_t gap = int64_t(t.rows[0].mspmax) - int64_t(w.msp_at_25);
    if (gap < -50 || gap > 50) ok = false;
    detail += std::string(experiment_name(w.e)) + " peak@25=" +
              std::to_string(t.rows[0].mspmax) + " ";
  }
  double dt = seconds_since(t0);
  if (dt >= 60.0) ok = false;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f s", dt);
  verdict(6, ok, "fold family growth rates and anchors", detail + buf);
}

// ---- 7: reverse family ------------------------------------------------------

void check_reverse_tables() {
  RunConfig cfg;
  BenchTable acc = run_bench(Experiment::ReverseAcc, {50, 100, 150}, cfg);
  bool ok = true;
  for (size_t i = 1; i < acc.rows.size(); i++) {
    if (acc.rows[i].mln - acc.rows[i - 1].mln != 9 * 50) ok = false;
    if (acc.rows[i].mspmax - acc.rows[i - 1].mspmax != 1 * 50) ok = false;
  }

  BenchTable rev = run_bench(Experiment::Reverse, {50, 100, 150, 200}, cfg);
  std::vector<int64_t> firsts;
  for (size_t i = 1; i < rev.rows.size(); i++) {
    firsts.push_back(int64_t(rev.rows[i].mln) - int64_t(rev.rows[i - 1].mln));
    if (rev.rows[i].mspmax - rev.rows[i - 1].mspmax != 8 * 50) ok = false;
  }
  for (size_t i = 1; i < firsts.size(); i++)
    if (firsts[i] - firsts[i - 1] != 7500) ok = false;

  verdict(7, ok, "reverse variants: linear accumulator, quadratic append", "");
}

// ---- 8: fusion difference table ---------------------------------------------

void check_fusion_table() {
  RunConfig cfg;
  DiffTable t = run_diff(Experiment::FuseUnfused, Experiment::FuseFused,
                         {100, 200, 300}, cfg);
  bool ok = t.rows.size() == 3;
  for (size_t i = 1; ok && i < t.rows.size(); i++) {
    if (t.rows[i].mln - t.rows[i - 1].mln != 2 * 100) ok = false;
    if (t.rows[i].mlnall - t.rows[i - 1].mlnall != 6 * 100) ok = false;
    if (t.rows[i].msp_eager != t.rows[0].msp_eager) ok = false;
    if (t.rows[i].msp_every1000 != t.rows[0].msp_every1000) ok = false;
    if (t.rows[i].msp_every2000 != t.rows[0].msp_every2000) ok = false;
    if (t.rows[i].msp_never - t.rows[i - 1].msp_never != 100) ok = false;
  }
  std::string detail;
  if (ok) {
    detail = "per-element 2 essential / 6 total, flat collected gap " +
             std::to_string(t.rows[0].msp_eager);
  }
  verdict(8, ok, "fusion closes a linear time gap, space gap flat under collection",
          detail);
}

// ---- 9: append sharing --------------------------------------------------------

void check_append_sharing() {
  RunConfig cfg;
  std::vector<uint64_t> ks = {250, 500, 1000};
  BenchTable s = run_bench(Experiment::AppendShared, ks, cfg);
  BenchTable u = run_bench(Experiment::AppendUnshared, ks, cfg);
  bool ok = true;
  for (size_t i = 1; i < ks.size(); i++) {
    uint64_t dk = ks[i] - ks[i - 1];
    if (s.rows[i].mspmax - s.rows[i - 1].mspmax != 2 * dk) ok = false;
    if (u.rows[i].mspmax - u.rows[i - 1].mspmax != 1 * dk) ok = false;
  }
  for (size_t i = 0; i < ks.size(); i++)
    if (s.rows[i].mln >= u.rows[i].mln) ok = false;
  uint64_t smln = s.rows[2].mln, umln = u.rows[2].mln;
  if (std::llabs(int64_t(smln) - 24009) * 20 > 24009) ok = false;  // 5%
  if (std::llabs(int64_t(umln) - 36021) * 20 > 36021) ok = false;
  char d[128];
  std::snprintf(d, sizeof d,
                "k=1000 essential steps %" PRIu64 " shared vs %" PRIu64 " unshared",
                smln, umln);
  verdict(9, ok, "sharing an appended list halves nothing but wins every k", d);
}

// ---- 10: indirection removal ---------------------------------------------------

void check_indirection_removal() {
  lrpgen::Gen gen(1010);
  int compared = 0, bad = 0, tried = 0;
  while (compared < 500 && tried < 6000) {
    tried++;
    ExprPtr e = gen.closed(7);
    NameSupply ns;
    ns.seed(*e);
    ExprPtr t = translate(freshen(e, ns), ns);
    ExprPtr with = remove_indirections(t);
    OracleResult a = evaluate(t, Strategy::Lrp, 10000);
    OracleResult b = evaluate(with, Strategy::Lrp, 10000);
    if (a.outcome == OracleOutcome::StepLimit ||
        b.outcome == OracleOutcome::StepLimit)
      continue;
    compared++;
    bool ok = a.outcome == b.outcome;
    if (ok && a.outcome == OracleOutcome::Whnf)
      ok = whnf_head(a.final_expr) == whnf_head(b.final_expr);
    if (!ok) {
      bad++;
      std::fprintf(stderr, "indirection removal changed behaviour on\n%s\n",
                   print_expr(*t).c_str());
    }
  }

  // scaling on a pure variable chain: ten times the input, at most fifteen
  // times the work
  auto chain = [](uint64_t n) {
    std::vector<Binding> binds;
    binds.reserve(n);
    std::vector<Name> names(n);
    for (uint64_t i = 0; i < n; i++) names[i] = intern("c" + std::to_string(i));
    for (uint64_t i = 0; i + 1 < n; i++)
      binds.push_back({names[i], mk_var(names[i + 1])});
    binds.push_back({names[n - 1], mk_con(intern("True"), {})});
    return mk_letrec(std::move(binds), mk_var(names[0]));
  };
  ExprPtr small = chain(10000), big = chain(100000);
  const int reps = 5;
  auto time_removal = [&](const ExprPtr& e) {
    auto t0 = Clock::now();
    for (int i = 0; i < reps; i++) {
      ExprPtr r = remove_indirections(e);
      if (r->size != e->size) std::abort();
    }
    return seconds_since(t0);
  };
  time_removal(small);  // warm-up
  double ts = time_removal(small);
  double tb = time_removal(big);
  double ratio = tb / ts;
  bool scale_ok = ratio <= 15.0;

  char d[160];
  std::snprintf(d, sizeof d,
                "%d programs, %d behaviour changes; chain 100000/10000 time ratio %.1f",
                compared, bad, ratio);
  verdict(10, compared >= 500 && bad == 0 && scale_ok,
          "chain removal keeps behaviour and scales near-linearly", d);
}

// ---- 11: black hole exit ---------------------------------------------------------

void check_blackhole_exit(const std::string& cli, const std::string& samples) {
  auto t0 = Clock::now();
  CmdResult r = run_cmd(cli + " run " + samples + "/bot.lrp");
  double dt = seconds_since(t0);
  char d[96];
  std::snprintf(d, sizeof d, "exit code %d in %.2f s", r.code, dt);
  verdict(11, r.code == 2 && dt < 1.0, "self-demanding binding exits with code 2", d);
}

// ---- 12: byte-identical reruns -----------------------------------------------------

void check_determinism(const std::string& cli, const std::string& samples) {
  const std::string cmds[] = {
      cli + " run " + samples + "/fold.lrp",
      cli + " compile " + samples + "/fuse.lrp",
      cli + " trace " + samples + "/seqtrue.lrp",
      cli + " oracle " + samples + "/seqtrue.lrp",
      cli + " compare " + samples + "/append.lrp",
      cli + " bench foldl --k 2..6:2",
      cli + " bench fusion --k 5 --csv",
  };
  bool ok = true;
  std::string detail;
  for (const std::string& c : cmds) {
    CmdResult a = run_cmd(c);
    CmdResult b = run_cmd(c);
    if (a.out != b.out || a.code != b.code || a.out.empty()) {
      ok = false;
      detail = "differs: " + c;
      break;
    }
  }
  verdict(12, ok, "every subcommand repeats byte-for-byte", detail);
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <cli-path> <samples-dir>\n", argv[0]);
    return 2;
  }
  std::string cli = argv[1], samples = argv[2];

  check_size_preservation();
  check_time_adequacy();
  check_space_adequacy();
  check_strategy_equivalence();
  check_seq_pair();
  check_fold_tables();
  check_reverse_tables();
  check_fusion_table();
  check_append_sharing();
  check_indirection_removal();
  check_blackhole_exit(cli, samples);
  check_determinism(cli, samples);

  if (failures) {
    std::printf("%d of 12 checks failed\n", failures);
    return 1;
  }
  std::printf("all 12 checks passed\n");
  return 0;
}
