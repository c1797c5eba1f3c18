#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iumapf/graph.hpp"

namespace iumapf {

// splitmix64; hand-rolled so instance draws are identical on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}
  uint64_t next();
  // uniform in [0, bound), bound > 0
  uint64_t bounded(uint64_t bound);
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  uint64_t state_;
};

struct Instance {
  Graph graph;
  Configuration start;   // S
  Configuration target;  // T
  int32_t radius = 0;    // r

  int32_t agent_count() const { return static_cast<int32_t>(start.size()); }
  // |S| = |T| = n, no duplicates within either, both distance-r independent.
  bool well_formed() const;
};

struct Plan {
  std::vector<Configuration> steps;

  int32_t makespan() const { return static_cast<int32_t>(steps.size()) - 1; }
};

struct PlanMetrics {
  int32_t makespan = 0;
  int32_t lower_bound = 0;
  double suboptimality = 1.0;
};

struct Violation {
  enum class Kind { None, Endpoint, Reachability, Independence };
  Kind kind = Kind::None;
  int32_t step = -1;

  bool ok() const { return kind == Kind::None; }
};

// Greedy-random sampling: shuffle all vertices, keep the first n at pairwise
// distance > r; on exhaustion reshuffle, up to 100 restarts per set. S and T
// are drawn independently from the same seeded stream. nullopt means the map
// is too dense for (n, r).
std::optional<Instance> sample_random_instance(const Graph& graph, int32_t n,
                                               int32_t r, uint64_t seed);

// Single distance-r independent vertex set, same scheme as above.
std::optional<Configuration> sample_independent_set(const Graph& graph, int32_t n,
                                                    int32_t r, Rng& rng);

Violation validate_plan(const Instance& instance, const Plan& plan);

// Minimum over bijections S -> T of the maximum hop distance, via threshold
// binary search with bipartite-matching feasibility checks.
int32_t bottleneck_lower_bound(const Instance& instance);

// nullopt when the plan fails validation.
std::optional<PlanMetrics> plan_metrics(const Instance& instance, const Plan& plan);

// Text formats. Grid instances address vertices by "row col" and need the
// graph's coords; plain instances use vertex ids.
std::string format_instance(const Instance& instance);
Instance parse_instance(const std::string& text, const Graph& graph);
void write_instance(const std::string& path, const Instance& instance);
Instance read_instance(const std::string& path, const Graph& graph);

std::string format_plan(const Plan& plan);
Plan parse_plan(const std::string& text, int32_t agent_count);
void write_plan(const std::string& path, const Plan& plan);
Plan read_plan(const std::string& path, int32_t agent_count);

}  // namespace iumapf
