#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iumapf/graph.hpp"

namespace iumapf {

// Bijection agent -> target index. The target vertex for agent i is
// targets[assignment.target_index[i]].
struct Assignment {
  std::vector<int32_t> target_index;

  bool bijective() const;
};

struct CostMatrix {
  int32_t n = 0;
  std::vector<int64_t> cost;  // row-major, n*n

  static CostMatrix zeros(int32_t n) { return {n, std::vector<int64_t>(size_t(n) * n, 0)}; }
  int64_t& at(int32_t i, int32_t j) { return cost[static_cast<size_t>(i) * n + j]; }
  int64_t at(int32_t i, int32_t j) const { return cost[static_cast<size_t>(i) * n + j]; }
};

// Hop distances from every start to every target, the planners' standard cost.
CostMatrix hop_cost_matrix(const Graph& graph, const Configuration& starts,
                           const Configuration& targets);

// Minimum-total-cost bijection (Hungarian method, O(n^3)). Deterministic:
// ties resolve by scan order over indices.
Assignment hungarian_assignment(const CostMatrix& cost);

int64_t assignment_cost(const CostMatrix& cost, const Assignment& a);

// Minimum-cost bijection with banned (agent, target) pairs priced out;
// nullopt when no perfect matching avoids the bans.
std::optional<Assignment> reassign_with_bans(
    const CostMatrix& cost, const std::vector<std::vector<int32_t>>& banned_targets);

}  // namespace iumapf
