#pragma once
// Benchmark program families and table/trace formatting. Each experiment is
// a source-text template instantiated at a list length k; measurements come
// from machine runs over the compiled program.

#include <string>
#include <vector>

#include "calculus.hpp"
#include "machine.hpp"

namespace lrp {

enum class Experiment : uint8_t {
  FoldL,         // foldl xor False over a k-long cons-built list
  FoldLStrict,   // foldl' variant
  FoldR,         // foldr variant
  Reverse,       // last (reverse (replicate k True))
  ReverseAcc,    // accumulator reverse'
  FuseFused,     // last (cm tail (take k ps)), cm f = foldr ((++) . f) []
  FuseUnfused,   // last ((comp cc (map tail)) (take k ps)), cc = foldr (++) []
  AppendShared,  // xs shared: p = xs ++ xs; last (p ++ p)
  AppendUnshared // four separate replicate calls
};

// Input shapes used by the experiment templates. gen_list_source renders an
// expression (generator plus take) that evaluates to the k-element list.
enum class GenShape : uint8_t {
  OneTrueThenFalse, // [True, False, False, ...]
  AllTrue,          // replicate k True
  InnerPairs        // k copies of [True, True]
};

std::string gen_list_source(uint64_t k, GenShape shape);

const char* experiment_name(Experiment e);
bool experiment_from_name(const std::string& s, Experiment& out);
std::vector<Experiment> all_experiments();

std::string experiment_source(Experiment e, uint64_t k);

struct MeasureRow {
  uint64_t k;
  uint64_t mln;
  uint64_t mlnall;
  uint64_t mspmax;
};

struct BenchTable {
  std::string label;
  std::vector<MeasureRow> rows;
};

// Parses src against the prelude, compiles, runs. Throws MachineError when
// the run does not reach a final state.
MeasureRow measure_source(const std::string& src, const RunConfig& cfg,
                          uint64_t k = 0);

BenchTable run_bench(Experiment e, const std::vector<uint64_t>& ks,
                     const RunConfig& cfg);

// Difference table: one experiment minus another, rows equal to the
// subtraction of the two single runs. The space column is repeated per
// garbage-collection mode (eager, every 1000th step, every 2000th, never);
// time measures are mode-independent and reported once.
struct DiffRow {
  uint64_t k;
  int64_t mln;
  int64_t mlnall;
  int64_t msp_eager;
  int64_t msp_every1000;
  int64_t msp_every2000;
  int64_t msp_never;
};

struct DiffTable {
  std::string label;
  std::vector<DiffRow> rows;
};

DiffTable run_diff(Experiment minuend, Experiment subtrahend,
                   const std::vector<uint64_t>& ks, const RunConfig& cfg);

std::string diff_csv(const DiffTable& t);
std::string diff_text(const DiffTable& t);

struct TraceRow {
  uint64_t index;
  std::string rule;
  uint64_t size;
};
std::vector<TraceRow> to_rows(const std::vector<TraceEntry>& t);
std::vector<TraceRow> to_rows(const std::vector<OracleTraceEntry>& t);

std::string bench_csv(const BenchTable& t);
std::string bench_text(const BenchTable& t);
std::string trace_csv(const std::vector<TraceRow>& rows);
std::string trace_tikz(const std::vector<TraceRow>& rows);

} // namespace lrp
