#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "iumapf/bench.hpp"
#include "iumapf/ilp.hpp"
#include "iumapf/instance.hpp"
#include "iumapf/kernel.hpp"
#include "iumapf/trace.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnsolved = 2;

std::string map_basename(const std::string& path) {
  size_t slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  size_t dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

std::string slurp_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

// Grid instances need --map; plain-graph instances either carry their own
// edge list or point at a companion edge-list file via --graph.
iumapf::Instance load_instance(const std::string& instance_path,
                               const std::string& map_path,
                               const std::string& graph_path,
                               iumapf::GridMap* map_out) {
  if (!map_path.empty()) {
    iumapf::GridMap map = iumapf::load_movingai(map_path);
    iumapf::Instance inst = iumapf::read_instance(instance_path, map.graph);
    if (map_out) *map_out = std::move(map);
    return inst;
  }
  iumapf::GalacticInstance gi =
      graph_path.empty()
          ? iumapf::read_galactic_instance(instance_path)
          : iumapf::parse_galactic_instance(slurp_file(graph_path) +
                                            slurp_file(instance_path));
  if (gi.gg.black_hole_count() > 0)
    throw std::runtime_error("planners take plain instances; black holes are only "
                             "meaningful for export-lp");
  if (!gi.gg.graph.is_connected())
    throw std::runtime_error("instance graph is disconnected");
  iumapf::Instance inst;
  inst.graph = std::move(gi.gg.graph);
  inst.start = std::move(gi.start);
  inst.target = std::move(gi.target);
  inst.radius = gi.radius;
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance-r independent unlabeled multi-agent pathfinding toolkit"};
  app.require_subcommand(1);

  std::string map_path, instance_path, graph_path, plan_path, out_path;
  std::string algo = "lacam";
  int32_t n = 1, r = 1, tau = 0, livelock_depth = 2, jobs = 1, instances = 50;
  uint64_t seed = 0;
  int64_t timeout_ms = 60000;
  std::vector<std::string> map_list, algo_list;
  std::vector<int32_t> n_list, r_list;

  auto* gen = app.add_subcommand("gen", "sample a random instance on a map");
  gen->add_option("--map", map_path)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--r", r);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_path)->required();

  auto* solve = app.add_subcommand("solve", "solve an instance and write the plan");
  solve->add_option("--map", map_path);
  solve->add_option("--graph", graph_path);
  solve->add_option("--instance", instance_path)->required();
  solve->add_option("--algo", algo)->check(CLI::IsMember({"pibt", "lacam", "exact"}));
  solve->add_option("--timeout-ms", timeout_ms);
  solve->add_option("--seed", seed);
  solve->add_option("--livelock-depth", livelock_depth);
  auto* solve_r = solve->add_option("--r", r, "override the instance radius");
  solve->add_option("--out", out_path);

  auto* validate = app.add_subcommand("validate", "check a plan against an instance");
  validate->add_option("--map", map_path);
  validate->add_option("--graph", graph_path);
  validate->add_option("--instance", instance_path)->required();
  validate->add_option("--plan", plan_path)->required();

  auto* kernelize_cmd =
      app.add_subcommand("kernelize", "compress an instance into a galactic kernel");
  kernelize_cmd->add_option("--map", map_path);
  kernelize_cmd->add_option("--graph", graph_path);
  kernelize_cmd->add_option("--instance", instance_path)->required();
  kernelize_cmd->add_option("--out", out_path)->required();

  auto* export_lp_cmd =
      app.add_subcommand("export-lp", "emit the horizon-tau integer program");
  export_lp_cmd->add_option("--map", map_path);
  export_lp_cmd->add_option("--graph", graph_path);
  export_lp_cmd->add_option("--instance", instance_path)->required();
  export_lp_cmd->add_option("--tau", tau)->required();
  export_lp_cmd->add_option("--out", out_path)->required();

  auto* bench = app.add_subcommand("bench", "seeded sweep over maps, n, r, algorithms");
  bench->add_option("--maps", map_list)->required()->delimiter(',');
  bench->add_option("--n", n_list)->required()->delimiter(',');
  bench->add_option("--r", r_list)->required()->delimiter(',');
  bench->add_option("--instances", instances);
  bench->add_option("--timeout-ms", timeout_ms);
  bench->add_option("--algos", algo_list)->delimiter(',');
  bench->add_option("--jobs", jobs);
  bench->add_option("--out", out_path)->required();

  auto* trace = app.add_subcommand("trace", "render a plan as SVG frames");
  trace->add_option("--map", map_path)->required();
  trace->add_option("--instance", instance_path)->required();
  trace->add_option("--plan", plan_path)->required();
  trace->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      iumapf::GridMap map = iumapf::load_movingai(map_path);
      auto instance = iumapf::sample_random_instance(map.graph, n, r, seed);
      if (!instance) {
        std::cerr << "generation failed: map too dense for n=" << n << " r=" << r
                  << "\n";
        return kExitUnsolved;
      }
      iumapf::write_instance(out_path, *instance);
      std::cout << "wrote " << out_path << " (n=" << n << " r=" << r
                << " seed=" << seed << ")\n";
      return kExitSolved;
    }

    if (solve->parsed()) {
      iumapf::Instance inst = load_instance(instance_path, map_path, graph_path, nullptr);
      if (!solve_r->empty()) inst.radius = r;
      iumapf::Plan plan;
      iumapf::RunRecord record = iumapf::run_single(
          map_path.empty() ? map_basename(instance_path) : map_basename(map_path),
          inst, algo, std::chrono::milliseconds(timeout_ms), seed, &plan,
          livelock_depth);
      std::cout << iumapf::kRunRecordHeader << "\n"
                << iumapf::format_run_record(record) << "\n";
      if (!record.solved) {
        std::cerr << "unsolved: " << record.reason << "\n";
        return kExitUnsolved;
      }
      if (!out_path.empty()) iumapf::write_plan(out_path, plan);
      return kExitSolved;
    }

    if (validate->parsed()) {
      iumapf::Instance inst = load_instance(instance_path, map_path, graph_path, nullptr);
      iumapf::Plan plan = iumapf::read_plan(plan_path, inst.agent_count());
      iumapf::Violation violation = iumapf::validate_plan(inst, plan);
      if (violation.ok()) {
        auto metrics = iumapf::plan_metrics(inst, plan);
        std::cout << "valid makespan=" << metrics->makespan
                  << " lower_bound=" << metrics->lower_bound
                  << " suboptimality=" << metrics->suboptimality << "\n";
        return kExitSolved;
      }
      const char* kind = violation.kind == iumapf::Violation::Kind::Endpoint
                             ? "endpoint"
                             : violation.kind == iumapf::Violation::Kind::Reachability
                                   ? "reachability"
                                   : "independence";
      std::cout << "invalid " << kind << " at step " << violation.step << "\n";
      return kExitUnsolved;
    }

    if (kernelize_cmd->parsed()) {
      iumapf::Instance inst = load_instance(instance_path, map_path, graph_path, nullptr);
      iumapf::GalacticInstance kernel = iumapf::kernelize(inst);
      iumapf::write_galactic_instance(out_path, kernel);
      std::cout << "kernel: " << inst.graph.vertex_count() << " -> "
                << kernel.gg.graph.vertex_count() << " vertices, "
                << kernel.gg.black_hole_count() << " black holes\n";
      return kExitSolved;
    }

    if (export_lp_cmd->parsed()) {
      iumapf::IlpModel model;
      if (!map_path.empty()) {
        iumapf::Instance inst = load_instance(instance_path, map_path, graph_path, nullptr);
        model = iumapf::build_bounded_model(inst, tau);
      } else {
        iumapf::GalacticInstance gi =
            graph_path.empty()
                ? iumapf::read_galactic_instance(instance_path)
                : iumapf::parse_galactic_instance(slurp_file(graph_path) +
                                                  slurp_file(instance_path));
        model = iumapf::build_galactic_model(gi.gg.graph, gi.gg.is_black_hole,
                                             gi.start, gi.target, gi.radius, tau);
      }
      std::ofstream sink(out_path);
      if (!sink) throw std::runtime_error("cannot write " + out_path);
      iumapf::export_lp(model, sink);
      std::cout << "wrote " << out_path << " (" << model.vars.size() << " vars, "
                << model.rows.size() << " rows)\n";
      return kExitSolved;
    }

    if (bench->parsed()) {
      if (algo_list.empty()) algo_list = {"lacam"};
      std::vector<iumapf::GridMap> maps;
      maps.reserve(map_list.size());
      iumapf::BenchConfig config;
      for (const auto& path : map_list) maps.push_back(iumapf::load_movingai(path));
      for (size_t i = 0; i < maps.size(); ++i)
        config.maps.emplace_back(map_basename(map_list[i]), &maps[i].graph);
      config.agent_counts = n_list;
      config.radii = r_list;
      config.instances_per_cell = instances;
      config.algos = algo_list;
      config.timeout = std::chrono::milliseconds(timeout_ms);
      config.jobs = jobs;
      iumapf::BenchOutput output = iumapf::run_bench(config);
      std::ofstream csv(out_path);
      if (!csv) throw std::runtime_error("cannot write " + out_path);
      iumapf::write_bench_csv(output, csv);
      for (const auto& cell : output.summaries) {
        std::cout << cell.map_name << " n=" << cell.n << " r=" << cell.r << " "
                  << cell.algo << ": rate=" << cell.rate_percent()
                  << "% mean_time=" << cell.mean_time_ms / 1000.0 << "s\n";
      }
      return kExitSolved;
    }

    if (trace->parsed()) {
      iumapf::GridMap map;
      iumapf::Instance inst = load_instance(instance_path, map_path, graph_path, &map);
      iumapf::Plan plan = iumapf::read_plan(plan_path, inst.agent_count());
      iumapf::Violation violation = iumapf::validate_plan(inst, plan);
      if (!violation.ok()) {
        std::cerr << "plan does not validate (step " << violation.step << ")\n";
        return kExitUnsolved;
      }
      std::ofstream sink(out_path);
      if (!sink) throw std::runtime_error("cannot write " + out_path);
      sink << iumapf::render_plan_svg(map, plan, inst.radius);
      std::cout << "wrote " << out_path << " (" << plan.steps.size() << " frames)\n";
      return kExitSolved;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
