#include "iumapf/dist_tables.hpp"

namespace iumapf {

TargetDistances TargetDistances::build_serial(const Graph& g,
                                              const Configuration& targets) {
  TargetDistances td;
  td.tables_.resize(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    td.tables_[i] = bfs_distances(g, targets[i]);
  }
  return td;
}

TargetDistances TargetDistances::build(const Graph& g, const Configuration& targets) {
  TargetDistances td;
  td.tables_.resize(targets.size());
  const int64_t count = static_cast<int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic)
  for (int64_t i = 0; i < count; ++i) {
    td.tables_[i] = bfs_distances(g, targets[i]);
  }
  return td;
}

}  // namespace iumapf
