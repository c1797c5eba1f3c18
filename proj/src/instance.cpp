#include "iumapf/instance.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "iumapf/dist_tables.hpp"

namespace iumapf {

uint64_t Rng::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t Rng::bounded(uint64_t bound) {
  // rejection sampling keeps the draw unbiased and platform-independent
  uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

bool Instance::well_formed() const {
  if (start.size() != target.size() || start.empty()) return false;
  auto distinct = [](Configuration c) {
    std::sort(c.begin(), c.end());
    return std::adjacent_find(c.begin(), c.end()) == c.end();
  };
  if (!distinct(start) || !distinct(target)) return false;
  return is_distance_r_independent(graph, start, radius) &&
         is_distance_r_independent(graph, target, radius);
}

std::optional<Configuration> sample_independent_set(const Graph& graph, int32_t n,
                                                    int32_t r, Rng& rng) {
  const int32_t v_count = graph.vertex_count();
  if (n <= 0 || n > v_count) return std::nullopt;
  std::vector<VertexId> order(v_count);
  std::iota(order.begin(), order.end(), 0);
  std::vector<uint32_t> kept_stamp(v_count, 0);
  BallScratch scratch;
  std::vector<VertexId> ball;
  constexpr int kRestarts = 100;
  for (int attempt = 1; attempt <= kRestarts; ++attempt) {
    rng.shuffle(order);
    Configuration kept;
    for (VertexId v : order) {
      scratch.collect(graph, v, r, ball);
      bool clear = true;
      for (VertexId u : ball) {
        if (kept_stamp[u] == static_cast<uint32_t>(attempt)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      kept.push_back(v);
      kept_stamp[v] = attempt;
      if (static_cast<int32_t>(kept.size()) == n) return kept;
    }
  }
  return std::nullopt;
}

std::optional<Instance> sample_random_instance(const Graph& graph, int32_t n,
                                               int32_t r, uint64_t seed) {
  Rng rng(seed);
  auto s = sample_independent_set(graph, n, r, rng);
  if (!s) return std::nullopt;
  auto t = sample_independent_set(graph, n, r, rng);
  if (!t) return std::nullopt;
  Instance inst;
  inst.graph = graph;
  inst.start = std::move(*s);
  inst.target = std::move(*t);
  inst.radius = r;
  return inst;
}

namespace {

bool same_vertex_set(Configuration a, Configuration b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool positions_valid(const Configuration& c, int32_t v_count, size_t n) {
  if (c.size() != n) return false;
  for (VertexId v : c)
    if (v < 0 || v >= v_count) return false;
  return true;
}

}  // namespace

Violation validate_plan(const Instance& instance, const Plan& plan) {
  const size_t n = instance.start.size();
  const int32_t v_count = instance.graph.vertex_count();
  if (plan.steps.empty() || !positions_valid(plan.steps.front(), v_count, n) ||
      !same_vertex_set(plan.steps.front(), instance.start))
    return {Violation::Kind::Endpoint, 0};
  for (size_t k = 0; k < plan.steps.size(); ++k) {
    const auto& step = plan.steps[k];
    if (!positions_valid(step, v_count, n))
      return {Violation::Kind::Reachability, static_cast<int32_t>(k)};
    if (k > 0 && !check_transition(instance.graph, plan.steps[k - 1], step))
      return {Violation::Kind::Reachability, static_cast<int32_t>(k)};
    if (!is_distance_r_independent(instance.graph, step, instance.radius))
      return {Violation::Kind::Independence, static_cast<int32_t>(k)};
  }
  if (!same_vertex_set(plan.steps.back(), instance.target))
    return {Violation::Kind::Endpoint, static_cast<int32_t>(plan.steps.size()) - 1};
  return {};
}

namespace {

// Kuhn's augmenting paths over edges with cost <= threshold.
bool perfect_matching_within(const std::vector<int32_t>& cost, int32_t n,
                             int32_t threshold) {
  std::vector<int32_t> match_right(n, -1);
  std::vector<uint8_t> visited(n);
  auto augment = [&](auto&& self, int32_t left) -> bool {
    for (int32_t right = 0; right < n; ++right) {
      if (cost[left * n + right] > threshold || visited[right]) continue;
      visited[right] = 1;
      if (match_right[right] < 0 || self(self, match_right[right])) {
        match_right[right] = left;
        return true;
      }
    }
    return false;
  };
  for (int32_t left = 0; left < n; ++left) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(augment, left)) return false;
  }
  return true;
}

}  // namespace

int32_t bottleneck_lower_bound(const Instance& instance) {
  const int32_t n = instance.agent_count();
  auto tables = TargetDistances::build(instance.graph, instance.target);
  std::vector<int32_t> cost(static_cast<size_t>(n) * n);
  std::vector<int32_t> values;
  for (int32_t i = 0; i < n; ++i) {
    for (int32_t j = 0; j < n; ++j) {
      cost[i * n + j] = tables.dist(j, instance.start[i]);
      values.push_back(cost[i * n + j]);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  int32_t lo = 0, hi = static_cast<int32_t>(values.size()) - 1;
  // largest distance always admits some bijection on a connected graph
  while (lo < hi) {
    int32_t mid = lo + (hi - lo) / 2;
    if (perfect_matching_within(cost, n, values[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo];
}

std::optional<PlanMetrics> plan_metrics(const Instance& instance, const Plan& plan) {
  if (!validate_plan(instance, plan).ok()) return std::nullopt;
  PlanMetrics m;
  m.makespan = plan.makespan();
  m.lower_bound = bottleneck_lower_bound(instance);
  if (m.makespan == 0 && m.lower_bound == 0)
    m.suboptimality = 1.0;
  else
    m.suboptimality = static_cast<double>(m.makespan) / m.lower_bound;
  return m;
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  out << "r " << instance.radius << "\n";
  out << "n " << instance.agent_count() << "\n";
  const bool grid = instance.graph.has_coords();
  auto emit = [&](char tag, const Configuration& c) {
    for (VertexId v : c) {
      if (grid) {
        auto p = instance.graph.coord(v);
        out << tag << ' ' << p.row << ' ' << p.col << "\n";
      } else {
        out << tag << ' ' << v << "\n";
      }
    }
  };
  emit('s', instance.start);
  emit('t', instance.target);
  return out.str();
}

Instance parse_instance(const std::string& text, const Graph& graph) {
  std::unordered_map<int64_t, VertexId> by_coord;
  if (graph.has_coords()) {
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      auto p = graph.coord(v);
      by_coord[(static_cast<int64_t>(p.row) << 32) | static_cast<uint32_t>(p.col)] = v;
    }
  }
  Instance inst;
  inst.graph = graph;
  int32_t n = -1;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "r") {
      ls >> inst.radius;
    } else if (tag == "n") {
      ls >> n;
    } else if (tag == "s" || tag == "t") {
      std::vector<int64_t> nums;
      int64_t x;
      while (ls >> x) nums.push_back(x);
      VertexId v;
      if (nums.size() == 2) {
        auto it = by_coord.find((nums[0] << 32) | static_cast<uint32_t>(nums[1]));
        if (it == by_coord.end())
          throw std::runtime_error("instance cell is not passable on this map");
        v = it->second;
      } else if (nums.size() == 1) {
        v = static_cast<VertexId>(nums[0]);
        if (v < 0 || v >= graph.vertex_count())
          throw std::runtime_error("instance vertex id out of range");
      } else {
        throw std::runtime_error("malformed instance line: " + line);
      }
      (tag == "s" ? inst.start : inst.target).push_back(v);
    } else {
      throw std::runtime_error("unknown instance tag: " + tag);
    }
  }
  if (n < 0 || inst.start.size() != static_cast<size_t>(n) ||
      inst.target.size() != static_cast<size_t>(n))
    throw std::runtime_error("instance agent count does not match s/t lines");
  return inst;
}

void write_instance(const std::string& path, const Instance& instance) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write instance file: " + path);
  f << format_instance(instance);
}

Instance read_instance(const std::string& path, const Graph& graph) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_instance(buf.str(), graph);
}

std::string format_plan(const Plan& plan) {
  std::ostringstream out;
  for (const auto& step : plan.steps) {
    for (size_t i = 0; i < step.size(); ++i) {
      if (i) out << ' ';
      out << step[i];
    }
    out << "\n";
  }
  return out.str();
}

Plan parse_plan(const std::string& text, int32_t agent_count) {
  Plan plan;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    Configuration step;
    VertexId v;
    while (ls >> v) step.push_back(v);
    if (static_cast<int32_t>(step.size()) != agent_count)
      throw std::runtime_error("plan step has wrong agent count");
    plan.steps.push_back(std::move(step));
  }
  if (plan.steps.empty()) throw std::runtime_error("plan file is empty");
  return plan;
}

void write_plan(const std::string& path, const Plan& plan) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write plan file: " + path);
  f << format_plan(plan);
}

Plan read_plan(const std::string& path, int32_t agent_count) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open plan file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_plan(buf.str(), agent_count);
}

}  // namespace iumapf
