#include "doctest.h"

#include <string>
#include <vector>

#include "compile.hpp"
#include "harness.hpp"
#include "machine.hpp"
#include "parser.hpp"

using namespace lrp;

namespace {

// Deep list equality written in the object language; forces the whole
// generated list, not just its head.
const char* kEqDefs =
    "eqb = \\x,y. case x of { True -> y; False -> not y };"
    "eqbl = \\xs,ys. case xs of"
    "  { [] -> case ys of { [] -> True; (b:bs) -> False }"
    "  ; (a:as) -> case ys of { [] -> False"
    "  ; (b:bs) -> case eqb a b of { True -> eqbl as bs; False -> False } } };"
    "eqbll = \\xs,ys. case xs of"
    "  { [] -> case ys of { [] -> True; (b:bs) -> False }"
    "  ; (a:as) -> case ys of { [] -> False"
    "  ; (b:bs) -> case eqbl a b of { True -> eqbll as bs; False -> False } } };";

std::string run_head(const std::string& program_src) {
  ExprPtr e = compile_program(parse_program_with_prelude(program_src));
  RunResult r = run(e);
  REQUIRE(r.outcome == Outcome::Final);
  return whnf_head(r.control);
}

MeasureRow measure_k(Experiment e, uint64_t k) {
  RunConfig cfg;
  return measure_source(experiment_source(e, k), cfg, k);
}

} // namespace

TEST_CASE("generated input lists have the advertised elements") {
  std::string one = std::string(kEqDefs) + "main = eqbl (" +
                    gen_list_source(1, GenShape::AllTrue) + ") [True];";
  CHECK(run_head(one) == "True");

  std::string three = std::string(kEqDefs) + "main = eqbl (" +
                      gen_list_source(3, GenShape::OneTrueThenFalse) +
                      ") [True,False,False];";
  CHECK(run_head(three) == "True");

  std::string pairs = std::string(kEqDefs) + "main = eqbll (" +
                      gen_list_source(2, GenShape::InnerPairs) +
                      ") [[True,True],[True,True]];";
  CHECK(run_head(pairs) == "True");

  // and a mismatch is detected, so the equality above is not vacuous
  std::string wrong = std::string(kEqDefs) + "main = eqbl (" +
                      gen_list_source(3, GenShape::OneTrueThenFalse) +
                      ") [True,False,True];";
  CHECK(run_head(wrong) == "False");
  std::string short_ = std::string(kEqDefs) + "main = eqbl (" +
                       gen_list_source(2, GenShape::AllTrue) + ") [True];";
  CHECK(run_head(short_) == "False");
}

TEST_CASE("experiment names round-trip") {
  for (Experiment e : all_experiments()) {
    Experiment back;
    REQUIRE(experiment_from_name(experiment_name(e), back));
    CHECK(back == e);
  }
  Experiment dummy;
  CHECK(!experiment_from_name("nonsense", dummy));
}

TEST_CASE("every experiment template compiles and terminates") {
  RunConfig cfg;
  for (Experiment e : all_experiments()) {
    CAPTURE(experiment_name(e));
    MeasureRow r = measure_source(experiment_source(e, 3), cfg, 3);
    CHECK(r.k == 3);
    CHECK(r.mln > 0);
    CHECK(r.mspmax > 0);
  }
}

TEST_CASE("fold family growth rates") {
  // the space slope of the lazy left fold settles once the pending
  // application chain dominates; measure from k=25 like the tables do
  MeasureRow a25 = measure_k(Experiment::FoldL, 25);
  MeasureRow a50 = measure_k(Experiment::FoldL, 50);
  CHECK(a50.mln - a25.mln == 12 * 25);
  CHECK(a50.mspmax - a25.mspmax == 8 * 25);
  CHECK(a25.mspmax == 217);

  MeasureRow b25 = measure_k(Experiment::FoldLStrict, 25);
  MeasureRow b50 = measure_k(Experiment::FoldLStrict, 50);
  CHECK(b50.mln - b25.mln == 13 * 25);
  CHECK(b50.mspmax - b25.mspmax == 1 * 25);

  MeasureRow c25 = measure_k(Experiment::FoldR, 25);
  MeasureRow c50 = measure_k(Experiment::FoldR, 50);
  CHECK(c50.mln - c25.mln == 11 * 25);
  CHECK(c50.mspmax - c25.mspmax == 1 * 25);
}

TEST_CASE("reverse growth rates") {
  // the accumulator version is linear
  MeasureRow a10 = measure_k(Experiment::ReverseAcc, 10);
  MeasureRow a20 = measure_k(Experiment::ReverseAcc, 20);
  CHECK(a20.mln - a10.mln == 9 * 10);
  CHECK(a20.mspmax - a10.mspmax == 1 * 10);

  // the append version is quadratic in time, linear in space
  MeasureRow r10 = measure_k(Experiment::Reverse, 10);
  MeasureRow r20 = measure_k(Experiment::Reverse, 20);
  MeasureRow r30 = measure_k(Experiment::Reverse, 30);
  int64_t d1 = int64_t(r20.mln) - int64_t(r10.mln);
  int64_t d2 = int64_t(r30.mln) - int64_t(r20.mln);
  CHECK(d2 - d1 == 300);  // 3 h^2 for step h = 10
  CHECK(r20.mspmax - r10.mspmax == 8 * 10);
  CHECK(r30.mspmax - r20.mspmax == 8 * 10);
}

TEST_CASE("append sharing") {
  MeasureRow s = measure_k(Experiment::AppendShared, 1000);
  MeasureRow u = measure_k(Experiment::AppendUnshared, 1000);
  CHECK(s.mln == 24009);
  CHECK(u.mln == 36021);
  CHECK(s.mln < u.mln);

  MeasureRow s2 = measure_k(Experiment::AppendShared, 500);
  MeasureRow u2 = measure_k(Experiment::AppendUnshared, 500);
  CHECK(s.mspmax - s2.mspmax == 2 * 500);
  CHECK(u.mspmax - u2.mspmax == 1 * 500);
}

TEST_CASE("pipeline fusion difference table") {
  RunConfig cfg;
  std::vector<uint64_t> ks = {100, 200};
  DiffTable t = run_diff(Experiment::FuseUnfused, Experiment::FuseFused, ks, cfg);
  REQUIRE(t.rows.size() == 2);
  const DiffRow& r1 = t.rows[0];
  const DiffRow& r2 = t.rows[1];

  // time gap grows linearly, 2 essential and 6 total steps per element
  CHECK(r2.mln - r1.mln == 2 * 100);
  CHECK(r2.mlnall - r1.mlnall == 6 * 100);

  // space gap is flat whenever collection runs, linear when it never does
  CHECK(r1.msp_eager == r2.msp_eager);
  CHECK(r1.msp_every1000 == r2.msp_every1000);
  CHECK(r1.msp_every2000 == r2.msp_every2000);
  CHECK(r2.msp_never - r1.msp_never == 100);

  // rows are exactly the single-run subtractions
  BenchTable fused = run_bench(Experiment::FuseFused, ks, cfg);
  BenchTable unfused = run_bench(Experiment::FuseUnfused, ks, cfg);
  for (size_t i = 0; i < ks.size(); i++) {
    CHECK(t.rows[i].mln ==
          int64_t(unfused.rows[i].mln) - int64_t(fused.rows[i].mln));
    CHECK(t.rows[i].mlnall ==
          int64_t(unfused.rows[i].mlnall) - int64_t(fused.rows[i].mlnall));
    CHECK(t.rows[i].msp_eager ==
          int64_t(unfused.rows[i].mspmax) - int64_t(fused.rows[i].mspmax));
  }
}

TEST_CASE("table and trace rendering") {
  BenchTable t;
  t.label = "demo";
  t.rows = {{5, 10, 20, 30}, {6, 11, 21, 31}};
  std::string csv = bench_csv(t);
  CHECK(csv == "k,mln,mlnall,mspmax\n5,10,20,30\n6,11,21,31\n");

  std::vector<TraceRow> rows = {{1, "Init", 3}, {2, "Subst", 1}};
  CHECK(trace_csv(rows) == "i,rule,size\n1,Init,3\n2,Subst,1\n");

  std::string tikz = trace_tikz(rows);
  CHECK(tikz.find("\\begin{tikzpicture}") != std::string::npos);
  CHECK(tikz.find("\\addplot coordinates {") != std::string::npos);
  CHECK(tikz.find("(1, 3)") != std::string::npos);
  CHECK(tikz.find("(2, 1)") != std::string::npos);
  CHECK(tikz.find("\\end{tikzpicture}") != std::string::npos);

  DiffTable d;
  d.rows = {{10, 23, 73, 11, 36, 46, 37}};
  CHECK(diff_csv(d) ==
        "k,mln,mlnall,msp_eager,msp_every1000,msp_every2000,msp_never\n"
        "10,23,73,11,36,46,37\n");
}

TEST_CASE("measurement refuses non-terminating programs") {
  RunConfig cfg;
  cfg.max_steps = 1000;
  CHECK_THROWS_AS(measure_source("main = letrec x = x in x;", cfg, 0),
                  MachineError);
}
