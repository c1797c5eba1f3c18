#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iumapf/instance.hpp"

namespace iumapf {

struct RunRecord {
  std::string map_name;
  int32_t n = 0;
  int32_t r = 0;
  uint64_t seed = 0;
  std::string algo;
  bool solved = false;
  double time_ms = 0.0;
  std::optional<int32_t> makespan;
  std::optional<int32_t> lower_bound;
  std::optional<double> suboptimality;
  std::string reason;  // diagnostics only, never part of the CSV row
};

inline constexpr const char* kRunRecordHeader =
    "map,n,r,seed,algo,solved,time_ms,makespan,lower_bound,suboptimality";

std::string format_run_record(const RunRecord& record);

// Per-cell seeds: FNV-1a over "map|n|r|index" so any cell reruns on its own.
uint64_t cell_seed(const std::string& map_name, int32_t n, int32_t r, int32_t index);

// The exact solver refuses instances whose configuration space C(|V|, n)
// exceeds this budget and reports too-large instead of hanging.
inline constexpr int64_t kExactConfigBudget = 4096;
bool exact_within_budget(int32_t vertex_count, int32_t n);

// Run one algorithm ("pibt", "lacam", "exact") on one instance under the
// timeout. Fills metrics on success; plan_out receives the plan when non-null.
RunRecord run_single(const std::string& map_name, const Instance& instance,
                     const std::string& algo, std::chrono::milliseconds timeout,
                     uint64_t seed, Plan* plan_out = nullptr,
                     int32_t livelock_depth = 2);

struct BenchConfig {
  std::vector<std::pair<std::string, const Graph*>> maps;  // (name, graph)
  std::vector<int32_t> agent_counts;
  std::vector<int32_t> radii;
  int32_t instances_per_cell = 50;
  std::vector<std::string> algos;
  std::chrono::milliseconds timeout{60000};
  int32_t jobs = 1;
};

struct CellSummary {
  std::string map_name;
  int32_t n = 0;
  int32_t r = 0;
  std::string algo;
  int32_t solved = 0;
  int32_t total = 0;
  double mean_time_ms = 0.0;  // over solved instances

  double rate_percent() const { return total ? 100.0 * solved / total : 0.0; }
};

struct BenchOutput {
  std::vector<RunRecord> records;  // deterministic order
  std::vector<CellSummary> summaries;
};

// Full sweep: every (map, n, r, index) cell instance against every algorithm.
// Independent runs are dispatched across `jobs` worker threads; row order in
// the output is independent of scheduling.
BenchOutput run_bench(const BenchConfig& config);

// Header, one CSV row per record, then "# summary ..." comment lines.
void write_bench_csv(const BenchOutput& output, std::ostream& sink);

}  // namespace iumapf
