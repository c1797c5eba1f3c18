#include "iumapf/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace iumapf {

namespace {

// close[u*V+v] == 1 iff u and v may not be simultaneously occupied.
std::vector<uint8_t> conflict_matrix(const Graph& graph,
                                     const std::vector<uint8_t>& is_black_hole,
                                     int32_t r) {
  const int32_t v_count = graph.vertex_count();
  std::vector<uint8_t> close(static_cast<size_t>(v_count) * v_count, 0);
  // radius-r balls inside the planet-induced subgraph
  std::vector<int32_t> depth(v_count);
  std::vector<uint32_t> stamp(v_count, 0);
  std::vector<VertexId> queue;
  uint32_t epoch = 0;
  for (VertexId s = 0; s < v_count; ++s) {
    if (is_black_hole[s]) continue;
    ++epoch;
    queue.clear();
    queue.push_back(s);
    stamp[s] = epoch;
    depth[s] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      VertexId u = queue[head];
      close[static_cast<size_t>(s) * v_count + u] = 1;
      if (depth[u] == r) continue;
      auto [b, e] = graph.neighbors(u);
      for (auto it = b; it != e; ++it) {
        if (is_black_hole[*it] || stamp[*it] == epoch) continue;
        stamp[*it] = epoch;
        depth[*it] = depth[u] + 1;
        queue.push_back(*it);
      }
    }
  }
  return close;
}

struct SuccessorEnumerator {
  const Graph& graph;
  const std::vector<uint8_t>& close;
  std::vector<VertexId> current;
  std::vector<VertexId> chosen;
  std::vector<Configuration>* out;

  void run(size_t pos) {
    if (pos == current.size()) {
      Configuration next = chosen;
      std::sort(next.begin(), next.end());
      out->push_back(std::move(next));
      return;
    }
    VertexId from = current[pos];
    auto consider = [&](VertexId v) {
      const size_t v_count = graph.vertex_count();
      for (size_t k = 0; k < pos; ++k) {
        if (close[static_cast<size_t>(chosen[k]) * v_count + v]) return;
      }
      chosen[pos] = v;
      run(pos + 1);
    };
    consider(from);
    auto [b, e] = graph.neighbors(from);
    for (auto it = b; it != e; ++it) consider(*it);
  }
};

// one synchronous move of every agent between two sorted multisets
bool matching_step(const Graph& graph, const Configuration& prev,
                   const Configuration& next, std::vector<int32_t>& match) {
  const int32_t n = static_cast<int32_t>(prev.size());
  match.assign(n, -1);
  std::vector<uint8_t> visited(n);
  auto adjacent = [&](VertexId u, VertexId v) {
    return u == v || graph.has_edge(u, v);
  };
  auto augment = [&](auto&& self, int32_t i) -> bool {
    for (int32_t j = 0; j < n; ++j) {
      if (visited[j] || !adjacent(prev[i], next[j])) continue;
      visited[j] = 1;
      if (match[j] < 0 || self(self, match[j])) {
        match[j] = i;
        return true;
      }
    }
    return false;
  };
  for (int32_t i = 0; i < n; ++i) {
    std::fill(visited.begin(), visited.end(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

OracleResult solve_core(const Graph& graph, const std::vector<uint8_t>& is_black_hole,
                        const Configuration& start, const Configuration& target,
                        int32_t r, OracleLimits limits) {
  OracleResult result;
  const int64_t horizon =
      limits.horizon_cap >= 0 ? limits.horizon_cap : int64_t{10} * graph.vertex_count();
  auto close = conflict_matrix(graph, is_black_hole, r);

  auto independent = [&](const Configuration& sorted) {
    const size_t v_count = graph.vertex_count();
    for (size_t i = 0; i < sorted.size(); ++i)
      for (size_t j = i + 1; j < sorted.size(); ++j)
        if (close[static_cast<size_t>(sorted[i]) * v_count + sorted[j]]) return false;
    return true;
  };

  Configuration root = start;
  std::sort(root.begin(), root.end());
  Configuration goal = target;
  std::sort(goal.begin(), goal.end());
  if (!independent(root) || !independent(goal)) {
    result.status = OracleStatus::Infeasible;
    return result;
  }

  std::vector<Configuration> states = {root};
  std::vector<int32_t> parent = {-1};
  std::vector<int64_t> depth_of = {0};
  std::unordered_map<Configuration, int32_t, ConfigHash> visited;
  visited.emplace(root, 0);

  int32_t goal_index = root == goal ? 0 : -1;
  std::vector<Configuration> successors;
  SuccessorEnumerator enumerator{graph, close, {}, {}, &successors};

  for (size_t head = 0; head < states.size() && goal_index < 0; ++head) {
    if (depth_of[head] >= horizon) {
      result.status = OracleStatus::CapReached;
      result.states = static_cast<int64_t>(states.size());
      return result;
    }
    successors.clear();
    enumerator.current = states[head];
    enumerator.chosen.assign(enumerator.current.size(), kNoVertex);
    enumerator.run(0);
    for (auto& next : successors) {
      if (visited.find(next) != visited.end()) continue;
      if (static_cast<int64_t>(states.size()) >= limits.state_cap) {
        result.status = OracleStatus::CapReached;
        result.states = static_cast<int64_t>(states.size());
        return result;
      }
      int32_t idx = static_cast<int32_t>(states.size());
      visited.emplace(next, idx);
      states.push_back(next);
      parent.push_back(static_cast<int32_t>(head));
      depth_of.push_back(depth_of[head] + 1);
      if (next == goal) {
        goal_index = idx;
        break;
      }
    }
  }

  result.states = static_cast<int64_t>(states.size());
  if (goal_index < 0) {
    result.status = OracleStatus::Infeasible;
    return result;
  }

  // multiset chain -> labeled plan via per-step matchings
  std::vector<int32_t> chain;
  for (int32_t i = goal_index; i != -1; i = parent[i]) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  Plan plan;
  plan.steps.push_back(states[chain[0]]);
  std::vector<int32_t> match;
  for (size_t k = 1; k < chain.size(); ++k) {
    const Configuration& prev = plan.steps.back();
    const Configuration& next_sorted = states[chain[k]];
    if (!matching_step(graph, prev, next_sorted, match))
      throw std::logic_error("oracle step has no per-agent matching");
    Configuration labeled(prev.size());
    for (size_t j = 0; j < next_sorted.size(); ++j) labeled[match[j]] = next_sorted[j];
    plan.steps.push_back(std::move(labeled));
  }
  result.status = OracleStatus::Solved;
  result.plan = std::move(plan);
  return result;
}

}  // namespace

OracleResult exact_bfs_solve(const Instance& instance, OracleLimits limits) {
  std::vector<uint8_t> no_black_holes(instance.graph.vertex_count(), 0);
  return solve_core(instance.graph, no_black_holes, instance.start, instance.target,
                    instance.radius, limits);
}

OracleResult exact_bfs_solve_galactic(const Graph& graph,
                                      const std::vector<uint8_t>& is_black_hole,
                                      const Configuration& start,
                                      const Configuration& target, int32_t r,
                                      OracleLimits limits) {
  return solve_core(graph, is_black_hole, start, target, r, limits);
}

}  // namespace iumapf
