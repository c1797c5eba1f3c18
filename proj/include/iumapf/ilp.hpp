#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iumapf/instance.hpp"

namespace iumapf {

// Feasibility integer program: constant objective, integer variables with
// box bounds, equality and <= rows with integer coefficients.
struct IlpModel {
  struct Var {
    std::string name;
    int32_t lower = 0;
    int32_t upper = 1;
  };
  struct Term {
    int32_t var = 0;
    int32_t coef = 0;
  };
  enum class Rel { Eq, Le };
  struct Row {
    std::vector<Term> terms;
    Rel rel = Rel::Eq;
    int32_t rhs = 0;
  };

  std::vector<Var> vars;
  std::vector<Row> rows;

  int32_t add_var(std::string name, int32_t lower, int32_t upper);
};

// Horizon-tau occupancy/flow program: x_{v,t} occupancy, f_{u,v,t} moves along
// closed neighborhoods, boundary rows fixing t=0 to S and t=tau to T, per-step
// outflow and inflow conservation, and pairwise exclusion rows for every
// vertex pair within distance r.
IlpModel build_bounded_model(const Instance& instance, int32_t tau);

// Same structure on a galactic graph: black-hole occupancy and black-hole to
// black-hole flow relax to [0, n]; exclusion rows cover only planet pairs at
// distance <= r inside the planet-induced subgraph. Requires S, T on planets
// and no black hole adjacent to either; throws std::invalid_argument.
IlpModel build_galactic_model(const Graph& graph,
                              const std::vector<uint8_t>& is_black_hole,
                              const Configuration& start, const Configuration& target,
                              int32_t r, int32_t tau);

// Deterministic LP text: Minimize obj: 0, rows in construction order, Bounds,
// Generals, End.
void export_lp(const IlpModel& model, std::ostream& sink);
std::string export_lp(const IlpModel& model);

bool satisfies(const IlpModel& model, const std::vector<int32_t>& values);

enum class IlpFeasibility { Feasible, Infeasible, Budget };

// Backtracking feasibility search over the raw model: variables in
// construction order, domain values ascending, with incremental row-sum
// pruning and unit propagation. Independent of any pathfinding semantics.
IlpFeasibility check_feasible(const IlpModel& model, int64_t node_budget = 50000000);

}  // namespace iumapf
