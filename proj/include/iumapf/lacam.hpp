#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "iumapf/instance.hpp"
#include "iumapf/matching.hpp"

namespace iumapf {

// Forced next locations for a subset of agents; agents are distinct and each
// vertex lies in the closed neighborhood of the agent's current vertex.
struct Constraint {
  std::vector<std::pair<int32_t, VertexId>> pins;
};

enum class SolveStatus { Solved, NoPlan, Timeout };

struct LacamResult {
  SolveStatus status = SolveStatus::NoPlan;
  std::optional<Plan> plan;
  int64_t expansions = 0;
  int64_t generations = 0;
  int64_t reinsertions = 0;
};

struct LacamOptions {
  std::chrono::milliseconds timeout{60000};
  int32_t livelock_depth = 2;
};

// Depth-first lazy-constraints search over configurations with the one-step
// generator as successor function. Known configurations are deduplicated by
// their sorted vertex multiset; a repeat of a recent (config, assignment)
// pair triggers goal banning and target reassignment.
LacamResult iu_lacam_solve(const Instance& instance, const LacamOptions& options = {});

}  // namespace iumapf
