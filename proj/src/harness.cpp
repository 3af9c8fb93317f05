#include "harness.hpp"

#include <iomanip>
#include <sstream>

#include "compile.hpp"
#include "parser.hpp"

namespace lrp {

const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::FoldL:          return "foldl";
    case Experiment::FoldLStrict:    return "foldl'";
    case Experiment::FoldR:          return "foldr";
    case Experiment::Reverse:        return "reverse";
    case Experiment::ReverseAcc:     return "reverse'";
    case Experiment::FuseFused:      return "fused";
    case Experiment::FuseUnfused:    return "unfused";
    case Experiment::AppendShared:   return "shared";
    case Experiment::AppendUnshared: return "unshared";
  }
  return "?";
}

std::vector<Experiment> all_experiments() {
  return {Experiment::FoldL,        Experiment::FoldLStrict,
          Experiment::FoldR,        Experiment::Reverse,
          Experiment::ReverseAcc,   Experiment::FuseFused,
          Experiment::FuseUnfused,  Experiment::AppendShared,
          Experiment::AppendUnshared};
}

bool experiment_from_name(const std::string& s, Experiment& out) {
  for (Experiment e : all_experiments()) {
    if (s == experiment_name(e)) {
      out = e;
      return true;
    }
  }
  return false;
}

std::string gen_list_source(uint64_t k, GenShape shape) {
  std::string n = std::to_string(k);
  switch (shape) {
    case GenShape::OneTrueThenFalse:
      return "letrec n = " + n + " ; fs = False : fs ; inp = True : fs in take n inp";
    case GenShape::AllTrue:
      return "letrec n = " + n + " in replicate n True";
    case GenShape::InnerPairs:
      return "letrec n = " + n +
             " ; p = True : True : [] ; ps = p : ps in take n ps";
  }
  return "";
}

// The fusion pipelines use the append-based library definitions
// (concat = foldr (++) [], concatMap f = foldr ((++) . f) []) rather than
// the prelude's inlined foldr forms: the inlined forms change the
// per-element cost of both sides and with them the difference slopes.
std::string experiment_source(Experiment e, uint64_t k) {
  std::string n = std::to_string(k);
  switch (e) {
    case Experiment::FoldL:
      return "main = letrec n = " + n +
             " ; fs = False : fs ; inp = True : fs in foldl xor False (take n inp) ;";
    case Experiment::FoldLStrict:
      return "main = letrec n = " + n +
             " ; fs = False : fs ; inp = True : fs in foldl' xor False (take n inp) ;";
    case Experiment::FoldR:
      return "main = letrec n = " + n +
             " ; fs = False : fs ; inp = True : fs in foldr xor False (take n inp) ;";
    case Experiment::Reverse:
      return "main = letrec n = " + n +
             " in last (reverse (replicate n True)) ;";
    case Experiment::ReverseAcc:
      return "main = letrec n = " + n +
             " in last (reverse' (replicate n True)) ;";
    case Experiment::FuseFused:
      return "main = letrec n = " + n +
             " ; p = True : True : [] ; ps = p : ps"
             " ; cm = \\f. foldr (comp (++) f) []"
             " in last (cm tail (take n ps)) ;";
    case Experiment::FuseUnfused:
      return "main = letrec n = " + n +
             " ; p = True : True : [] ; ps = p : ps"
             " ; cc = foldr (++) []"
             " in last ((comp cc (map tail)) (take n ps)) ;";
    case Experiment::AppendShared:
      return "main = letrec n = " + n +
             " ; xs = replicate n True ; p = xs ++ xs in last (p ++ p) ;";
    case Experiment::AppendUnshared:
      return "main = letrec n = " + n +
             " in last (((replicate n True) ++ (replicate n True)) ++ "
             "((replicate n True) ++ (replicate n True))) ;";
  }
  return "";
}

MeasureRow measure_source(const std::string& src, const RunConfig& cfg,
                          uint64_t k) {
  Program p = parse_program_with_prelude(src);
  ExprPtr me = compile_program(p);
  RunResult r = run(me, cfg);
  if (r.outcome != Outcome::Final)
    throw MachineError(std::string("benchmark run ended with ") +
                       outcome_name(r.outcome));
  return {k, r.meas.mln, r.meas.mlnall, r.meas.mspmax};
}

BenchTable run_bench(Experiment e, const std::vector<uint64_t>& ks,
                     const RunConfig& cfg) {
  BenchTable t;
  t.label = experiment_name(e);
  for (uint64_t k : ks)
    t.rows.push_back(measure_source(experiment_source(e, k), cfg, k));
  return t;
}

DiffTable run_diff(Experiment minuend, Experiment subtrahend,
                   const std::vector<uint64_t>& ks, const RunConfig& cfg) {
  DiffTable t;
  t.label = std::string(experiment_name(minuend)) + " minus " +
            experiment_name(subtrahend);
  struct Mode {
    GcMode gc;
    uint64_t every;
  };
  const Mode modes[4] = {{GcMode::Eager, 1},
                         {GcMode::EveryN, 1000},
                         {GcMode::EveryN, 2000},
                         {GcMode::Never, 1}};
  for (uint64_t k : ks) {
    DiffRow row{k, 0, 0, 0, 0, 0, 0};
    int64_t* msp[4] = {&row.msp_eager, &row.msp_every1000, &row.msp_every2000,
                       &row.msp_never};
    for (int i = 0; i < 4; ++i) {
      RunConfig c = cfg;
      c.gc_mode = modes[i].gc;
      c.gc_every = modes[i].every;
      MeasureRow a = measure_source(experiment_source(minuend, k), c, k);
      MeasureRow b = measure_source(experiment_source(subtrahend, k), c, k);
      *msp[i] = (int64_t)a.mspmax - (int64_t)b.mspmax;
      if (i == 0) {
        row.mln = (int64_t)a.mln - (int64_t)b.mln;
        row.mlnall = (int64_t)a.mlnall - (int64_t)b.mlnall;
      }
    }
    t.rows.push_back(row);
  }
  return t;
}

std::vector<TraceRow> to_rows(const std::vector<TraceEntry>& t) {
  std::vector<TraceRow> rows;
  rows.reserve(t.size());
  for (const TraceEntry& e : t)
    rows.push_back({e.index, rule_name(e.rule), e.size});
  return rows;
}

std::vector<TraceRow> to_rows(const std::vector<OracleTraceEntry>& t) {
  std::vector<TraceRow> rows;
  rows.reserve(t.size());
  for (const OracleTraceEntry& e : t)
    rows.push_back({e.index, calc_rule_name(e.rule), e.size});
  return rows;
}

std::string bench_csv(const BenchTable& t) {
  std::string out = "k,mln,mlnall,mspmax\n";
  for (const MeasureRow& r : t.rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.mln) + ',' +
           std::to_string(r.mlnall) + ',' + std::to_string(r.mspmax) + '\n';
  }
  return out;
}

std::string bench_text(const BenchTable& t) {
  std::ostringstream os;
  os << "# " << t.label << '\n';
  os << std::setw(8) << "k" << std::setw(12) << "mln" << std::setw(12)
     << "mlnall" << std::setw(12) << "mspmax" << '\n';
  for (const MeasureRow& r : t.rows) {
    os << std::setw(8) << r.k << std::setw(12) << r.mln << std::setw(12)
       << r.mlnall << std::setw(12) << r.mspmax << '\n';
  }
  return os.str();
}

std::string diff_csv(const DiffTable& t) {
  std::string out = "k,mln,mlnall,msp_eager,msp_every1000,msp_every2000,msp_never\n";
  for (const DiffRow& r : t.rows) {
    out += std::to_string(r.k) + ',' + std::to_string(r.mln) + ',' +
           std::to_string(r.mlnall) + ',' + std::to_string(r.msp_eager) + ',' +
           std::to_string(r.msp_every1000) + ',' +
           std::to_string(r.msp_every2000) + ',' +
           std::to_string(r.msp_never) + '\n';
  }
  return out;
}

std::string diff_text(const DiffTable& t) {
  std::ostringstream os;
  os << "# " << t.label << '\n';
  os << std::setw(8) << "k" << std::setw(12) << "mln" << std::setw(12)
     << "mlnall" << std::setw(12) << "eager" << std::setw(14) << "every1000"
     << std::setw(14) << "every2000" << std::setw(12) << "never" << '\n';
  for (const DiffRow& r : t.rows) {
    os << std::setw(8) << r.k << std::setw(12) << r.mln << std::setw(12)
       << r.mlnall << std::setw(12) << r.msp_eager << std::setw(14)
       << r.msp_every1000 << std::setw(14) << r.msp_every2000 << std::setw(12)
       << r.msp_never << '\n';
  }
  return os.str();
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "i,rule,size\n";
  for (const TraceRow& r : rows) {
    out += std::to_string(r.index) + ',' + r.rule + ',' +
           std::to_string(r.size) + '\n';
  }
  return out;
}

std::string trace_tikz(const std::vector<TraceRow>& rows) {
  std::string out;
  out += "\\begin{tikzpicture}\n";
  out += "\\begin{axis}[xlabel={$i$}, ylabel={size}]\n";
  out += "\\addplot coordinates {\n";
  for (const TraceRow& r : rows)
    out += "  (" + std::to_string(r.index) + ", " + std::to_string(r.size) +
           ")\n";
  out += "};\n";
  out += "\\end{axis}\n";
  out += "\\end{tikzpicture}\n";
  return out;
}

} // namespace lrp
