#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "iumapf/instance.hpp"

namespace iumapf {

enum class OracleStatus { Solved, Infeasible, CapReached };

struct OracleResult {
  OracleStatus status = OracleStatus::Infeasible;
  std::optional<Plan> plan;  // labeled and makespan-optimal when Solved
  int64_t states = 0;
};

struct OracleLimits {
  int64_t horizon_cap = -1;  // -1 selects 10 * |V|
  int64_t state_cap = 2000000;
};

// Breadth-first search over unlabeled configurations (sorted vertex
// multisets); successors enumerate per-agent closed-neighborhood moves with
// early independence pruning. Desk-scale ground truth for the planners.
OracleResult exact_bfs_solve(const Instance& instance, OracleLimits limits = {});

// Galactic relaxation: vertices flagged as black holes hold any number of
// agents (up to n trivially) and independence applies only to planet pairs,
// with distances measured inside the planet-induced subgraph.
OracleResult exact_bfs_solve_galactic(const Graph& graph,
                                      const std::vector<uint8_t>& is_black_hole,
                                      const Configuration& start,
                                      const Configuration& target, int32_t r,
                                      OracleLimits limits = {});

}  // namespace iumapf
