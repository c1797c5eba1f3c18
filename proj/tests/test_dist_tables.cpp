#include <doctest.h>

#include "helpers.hpp"
#include "iumapf/dist_tables.hpp"

using namespace iumapf;

TEST_CASE("parallel table build matches the serial reference") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = testutil::random_connected_graph(rng, 200, 150);
    Configuration targets;
    for (int k = 0; k < 24; ++k)
      targets.push_back(static_cast<VertexId>(rng.bounded(g.vertex_count())));
    auto serial = TargetDistances::build_serial(g, targets);
    auto parallel = TargetDistances::build(g, targets);
    REQUIRE(serial.target_count() == parallel.target_count());
    for (int32_t t = 0; t < serial.target_count(); ++t) {
      CHECK(serial.target_vertex(t) == parallel.target_vertex(t));
      CHECK(serial.table(t).dist == parallel.table(t).dist);
    }
  }
}

TEST_CASE("tables agree with single-source bfs") {
  Graph g = testutil::grid_graph(6, 6);
  Configuration targets = {0, 17, 35};
  auto tables = TargetDistances::build(g, targets);
  for (int32_t t = 0; t < 3; ++t) {
    CHECK(tables.table(t).dist == bfs_distances(g, targets[t]).dist);
    CHECK(tables.dist(t, targets[t]) == 0);
  }
}
