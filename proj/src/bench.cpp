#include "iumapf/bench.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "iumapf/lacam.hpp"
#include "iumapf/oracle.hpp"
#include "iumapf/pibt.hpp"

namespace iumapf {

std::string format_run_record(const RunRecord& record) {
  std::ostringstream out;
  out << record.map_name << ',' << record.n << ',' << record.r << ',' << record.seed
      << ',' << record.algo << ',' << (record.solved ? 1 : 0) << ',';
  out.setf(std::ios::fixed);
  out.precision(3);
  out << record.time_ms << ',';
  if (record.makespan) out << *record.makespan;
  out << ',';
  if (record.lower_bound) out << *record.lower_bound;
  out << ',';
  if (record.suboptimality) {
    out.precision(4);
    out << *record.suboptimality;
  }
  return out.str();
}

uint64_t cell_seed(const std::string& map_name, int32_t n, int32_t r, int32_t index) {
  std::string key = map_name + "|" + std::to_string(n) + "|" + std::to_string(r) +
                    "|" + std::to_string(index);
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

bool exact_within_budget(int32_t vertex_count, int32_t n) {
  // C(|V|, n) with clamping
  long double binom = 1.0L;
  for (int32_t k = 1; k <= n; ++k) {
    binom *= static_cast<long double>(vertex_count - k + 1) / k;
    if (binom > 4.0L * kExactConfigBudget) return false;
  }
  return binom <= static_cast<long double>(kExactConfigBudget);
}

RunRecord run_single(const std::string& map_name, const Instance& instance,
                     const std::string& algo, std::chrono::milliseconds timeout,
                     uint64_t seed, Plan* plan_out, int32_t livelock_depth) {
  RunRecord record;
  record.map_name = map_name;
  record.n = instance.agent_count();
  record.r = instance.radius;
  record.seed = seed;
  record.algo = algo;

  auto t0 = std::chrono::steady_clock::now();
  std::optional<Plan> plan;
  if (algo == "pibt") {
    int64_t budget = int64_t{10} * instance.agent_count() *
                     instance.graph.vertex_count();
    auto run = run_pibt(instance, budget, t0 + timeout);
    plan = std::move(run.plan);
    if (!plan) record.reason = "stalled";
  } else if (algo == "lacam") {
    LacamOptions options;
    options.timeout = timeout;
    options.livelock_depth = livelock_depth;
    auto result = iu_lacam_solve(instance, options);
    plan = std::move(result.plan);
    if (!plan)
      record.reason = result.status == SolveStatus::Timeout ? "timeout" : "no-plan";
  } else if (algo == "exact") {
    if (!exact_within_budget(instance.graph.vertex_count(), instance.agent_count())) {
      record.reason = "too-large";
    } else {
      auto result = exact_bfs_solve(instance);
      plan = std::move(result.plan);
      if (!plan)
        record.reason =
            result.status == OracleStatus::Infeasible ? "infeasible" : "cap";
    }
  } else {
    record.reason = "unknown-algo";
  }
  auto t1 = std::chrono::steady_clock::now();
  record.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  record.lower_bound = bottleneck_lower_bound(instance);
  if (plan) {
    record.solved = true;
    record.makespan = plan->makespan();
    if (*record.lower_bound == 0 && *record.makespan == 0)
      record.suboptimality = 1.0;
    else
      record.suboptimality =
          static_cast<double>(*record.makespan) / *record.lower_bound;
    if (plan_out) *plan_out = std::move(*plan);
  }
  return record;
}

BenchOutput run_bench(const BenchConfig& config) {
  struct Task {
    int32_t map_index;
    int32_t n;
    int32_t r;
    int32_t instance_index;
  };
  std::vector<Task> tasks;
  for (int32_t m = 0; m < static_cast<int32_t>(config.maps.size()); ++m)
    for (int32_t n : config.agent_counts)
      for (int32_t r : config.radii)
        for (int32_t i = 0; i < config.instances_per_cell; ++i)
          tasks.push_back({m, n, r, i});

  const size_t algo_count = config.algos.size();
  BenchOutput output;
  output.records.resize(tasks.size() * algo_count);

  const int64_t task_count = static_cast<int64_t>(tasks.size());
  const int32_t jobs = std::max(1, config.jobs);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int64_t ti = 0; ti < task_count; ++ti) {
    const Task& task = tasks[ti];
    const auto& [map_name, graph] = config.maps[task.map_index];
    uint64_t seed = cell_seed(map_name, task.n, task.r, task.instance_index);
    auto instance = sample_random_instance(*graph, task.n, task.r, seed);
    for (size_t a = 0; a < algo_count; ++a) {
      RunRecord& record = output.records[ti * algo_count + a];
      record.map_name = map_name;
      record.n = task.n;
      record.r = task.r;
      record.seed = seed;
      record.algo = config.algos[a];
      if (!instance) {
        record.reason = "gen-failed";
        continue;
      }
      try {
        record =
            run_single(map_name, *instance, config.algos[a], config.timeout, seed);
      } catch (const std::exception& e) {
        record.solved = false;  // a failed row never aborts the sweep
        record.reason = e.what();
      }
    }
  }

  for (int32_t m = 0; m < static_cast<int32_t>(config.maps.size()); ++m) {
    for (int32_t n : config.agent_counts) {
      for (int32_t r : config.radii) {
        for (const auto& algo : config.algos) {
          CellSummary cell;
          cell.map_name = config.maps[m].first;
          cell.n = n;
          cell.r = r;
          cell.algo = algo;
          double total_ms = 0.0;
          for (const auto& record : output.records) {
            if (record.map_name != cell.map_name || record.n != n || record.r != r ||
                record.algo != algo)
              continue;
            ++cell.total;
            if (record.solved) {
              ++cell.solved;
              total_ms += record.time_ms;
            }
          }
          if (cell.total == 0) continue;
          cell.mean_time_ms = cell.solved ? total_ms / cell.solved : 0.0;
          output.summaries.push_back(std::move(cell));
        }
      }
    }
  }
  return output;
}

void write_bench_csv(const BenchOutput& output, std::ostream& sink) {
  sink << kRunRecordHeader << "\n";
  for (const auto& record : output.records)
    sink << format_run_record(record) << "\n";
  for (const auto& cell : output.summaries) {
    sink << "# summary," << cell.map_name << ',' << cell.n << ',' << cell.r << ','
         << cell.algo << ",rate=" << cell.rate_percent()
         << ",mean_time_ms=" << cell.mean_time_ms << "\n";
  }
}

}  // namespace iumapf
