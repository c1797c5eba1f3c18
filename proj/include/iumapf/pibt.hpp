#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "iumapf/dist_tables.hpp"
#include "iumapf/graph.hpp"
#include "iumapf/instance.hpp"
#include "iumapf/matching.hpp"

namespace iumapf {

// Priorities live on the goals: each target starts with a unique decimal in
// (0,1); a goal whose assigned agent sits on it drops back to its decimal,
// every other goal gains +1 per step.
std::vector<double> initial_priorities(int32_t n);
std::vector<double> update_priorities(const std::vector<double>& p,
                                      const Configuration& q_from,
                                      const Configuration& targets,
                                      const Assignment& g);

// Rotate goals along a deadlock cycle: each cycle member takes over the goal
// of its predecessor, whose greedy route pointed at this member's vertex.
Assignment resolve_deadlock(const std::vector<int32_t>& cycle, const Assignment& g);

struct StepResult {
  Configuration q_to;
  Assignment assignment;
  std::vector<double> priorities;
  int32_t planner_calls = 0;  // one-step planner invocations; n by construction
};

// One-step configuration generator keeping distance-r independence and
// refusing distance-r rotations. Holds per-step scratch so a planner loop
// reuses one engine across steps.
class PibtEngine {
 public:
  PibtEngine(const Graph& graph, int32_t r, Configuration targets,
             const TargetDistances* tables);

  // Full step: resolve deadlocks by goal rotation, update priorities, then
  // plan agents in descending goal priority. q_from must be independent.
  StepResult step(const Configuration& q_from, Assignment g,
                  const std::vector<double>& p);

  // Generation under forced moves for the search layer. Pins are applied
  // first (nullopt if they already break independence among themselves),
  // remaining agents planned in the given order, full independence rechecked
  // at the end. The deadlock preamble runs only when no pins are present.
  std::optional<std::pair<Configuration, Assignment>> constrained_step(
      const Configuration& q_from, Assignment g,
      const std::vector<std::pair<int32_t, VertexId>>& pins,
      const std::vector<int32_t>& order);

  // Pieces below are the step's building blocks, callable after begin_step
  // (mainly exercised directly by tests).
  void begin_step(const Configuration& q_from, Assignment g);
  // Follow the chain of agents each standing on the previous one's (r+1)-hop
  // greedy route; returns the closed cycle starting at `agent`, or nullopt.
  std::optional<std::vector<int32_t>> find_deadlock(int32_t agent, VertexId first_hop);
  std::optional<std::vector<int32_t>> find_deadlock(int32_t agent);
  // Agent parked on its own goal exactly r hops beyond v on agent's route.
  std::optional<int32_t> detect_swap(int32_t agent, VertexId v);
  bool plan_agent(int32_t agent);  // one-step planning with recursion
  const Configuration& q_to() const { return q_to_; }
  const Assignment& assignment() const { return g_; }
  int32_t planner_calls() const { return calls_; }

 private:
  void run_deadlock_preamble(const std::vector<int32_t>& scan_order);
  void decide(int32_t agent, VertexId v);
  void undecide(int32_t agent, VertexId v);
  std::vector<int32_t> order_by_priority(const std::vector<double>& goal_priority) const;

  const Graph& graph_;
  int32_t r_;
  Configuration targets_;
  const TargetDistances* tables_;
  int32_t n_;

  Configuration q_from_;
  Configuration q_to_;
  Assignment g_;
  std::vector<int32_t> occupied_from_;  // vertex -> agent at q_from, -1 free
  std::vector<int32_t> decided_at_;     // vertex -> agent with decided q_to
  std::vector<uint8_t> chain_mark_;     // origins of agents waiting on the stack
  std::vector<VertexId> dirty_;
  BallScratch scratch_;
  std::vector<std::vector<VertexId>> ball_by_depth_;
  std::vector<std::vector<VertexId>> cand_by_depth_;
  int32_t depth_ = 0;
  int32_t calls_ = 0;
};

// Alg. "one step of the generator" as a standalone call; builds the distance
// tables internally, so planner loops should prefer PibtEngine.
StepResult iu_pibt_step(const Graph& graph, int32_t r, const Configuration& q_from,
                        const Configuration& targets, const Assignment& g,
                        const std::vector<double>& p);

struct PibtRunResult {
  std::optional<Plan> plan;  // empty on stall
  Configuration last;
  int64_t steps_taken = 0;
};

// Iterate the generator until the configuration equals T as a set, the step
// budget runs out, or the deadline passes.
PibtRunResult run_pibt(const Instance& instance, int64_t max_steps,
                       std::optional<std::chrono::steady_clock::time_point> deadline =
                           std::nullopt);

}  // namespace iumapf
