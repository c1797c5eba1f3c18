#pragma once

#include "iumapf/graph.hpp"

namespace iumapf {

// One BFS table per target vertex. Building the tables dominates setup time on
// large maps, so the default build runs the per-source BFS loop under OpenMP;
// build_serial is the reference implementation the tests compare against.
class TargetDistances {
 public:
  static TargetDistances build(const Graph& g, const Configuration& targets);
  static TargetDistances build_serial(const Graph& g, const Configuration& targets);

  const DistanceTable& table(int32_t target_index) const { return tables_[target_index]; }
  int32_t dist(int32_t target_index, VertexId v) const {
    return tables_[target_index].dist[v];
  }
  int32_t target_count() const { return static_cast<int32_t>(tables_.size()); }
  VertexId target_vertex(int32_t target_index) const {
    return tables_[target_index].source;
  }

 private:
  std::vector<DistanceTable> tables_;
};

}  // namespace iumapf
