#include <doctest.h>

#include "helpers.hpp"
#include "iumapf/oracle.hpp"

using namespace iumapf;
using testutil::cycle_graph;
using testutil::path_graph;

namespace {

Instance make_instance(Graph g, Configuration s, Configuration t, int32_t r) {
  Instance inst;
  inst.graph = std::move(g);
  inst.start = std::move(s);
  inst.target = std::move(t);
  inst.radius = r;
  return inst;
}

}  // namespace

TEST_CASE("oracle on trivial and small instances") {
  SUBCASE("start equals target") {
    auto inst = make_instance(path_graph(5), {1, 4}, {4, 1}, 1);
    auto result = exact_bfs_solve(inst);
    REQUIRE(result.status == OracleStatus::Solved);
    CHECK(result.plan->makespan() == 0);
  }
  SUBCASE("two agents shift right along a path, keeping their gap") {
    auto inst = make_instance(path_graph(7), {0, 3}, {3, 6}, 1);
    auto result = exact_bfs_solve(inst);
    REQUIRE(result.status == OracleStatus::Solved);
    CHECK(result.plan->makespan() == 3);
    CHECK(validate_plan(inst, *result.plan).ok());
  }
  SUBCASE("4-cycle rotation is a one-step plan") {
    auto inst = make_instance(cycle_graph(4), {0, 2}, {1, 3}, 1);
    auto result = exact_bfs_solve(inst);
    REQUIRE(result.status == OracleStatus::Solved);
    CHECK(result.plan->makespan() == 1);
  }
  SUBCASE("8-cycle rotation instance is feasible for the oracle") {
    auto inst = make_instance(cycle_graph(8), {0, 2, 4, 6}, {1, 3, 5, 7}, 1);
    auto result = exact_bfs_solve(inst);
    REQUIRE(result.status == OracleStatus::Solved);
    CHECK(result.plan->makespan() == 1);  // one synchronous rotation
  }
  SUBCASE("frozen star is infeasible") {
    // K_{1,3}: neither agent can ever stand on the hub at r=1, so the third
    // leaf is unreachable
    Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
    auto inst = make_instance(g, {1, 2}, {1, 3}, 1);
    CHECK(exact_bfs_solve(inst).status == OracleStatus::Infeasible);
  }
}

TEST_CASE("oracle caps") {
  auto inst = make_instance(path_graph(9), {0}, {8}, 0);
  OracleLimits limits;
  limits.horizon_cap = 3;  // target is 8 hops away
  CHECK(exact_bfs_solve(inst, limits).status == OracleStatus::CapReached);
  limits.horizon_cap = -1;
  limits.state_cap = 2;
  CHECK(exact_bfs_solve(inst, limits).status == OracleStatus::CapReached);
}

TEST_CASE("oracle plans validate and respect the lower bound") {
  Rng rng(61);
  int solved = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int32_t v_count = 6 + static_cast<int32_t>(rng.bounded(7));
    Graph g = testutil::random_connected_graph(rng, v_count, v_count / 2);
    int32_t r = static_cast<int32_t>(rng.bounded(3));
    int32_t n = 1 + static_cast<int32_t>(rng.bounded(3));
    auto inst = sample_random_instance(g, n, r, trial);
    if (!inst) continue;
    auto result = exact_bfs_solve(*inst);
    if (result.status != OracleStatus::Solved) continue;
    ++solved;
    CHECK(validate_plan(*inst, *result.plan).ok());
    CHECK(result.plan->makespan() >= bottleneck_lower_bound(*inst));
  }
  CHECK(solved > 20);
}

TEST_CASE("galactic relaxation makes a blocked hub passable") {
  // subdivided 3-arm star, arms 0-1-2, 0-3-4, 0-5-6; at r=2 no agent may
  // ever stand on the hub while another is anywhere else, so moving into the
  // third arm is impossible on the plain graph
  Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
  auto plain = make_instance(g, {2, 4}, {2, 6}, 2);
  CHECK(exact_bfs_solve(plain).status == OracleStatus::Infeasible);

  // hub as a black hole: independence is measured inside G[P], where the
  // arms are disjoint, and the hole itself absorbs the crossing agent
  std::vector<uint8_t> holes = {1, 0, 0, 0, 0, 0, 0};
  auto result = exact_bfs_solve_galactic(g, holes, {2, 4}, {2, 6}, 2);
  REQUIRE(result.status == OracleStatus::Solved);
  CHECK(result.plan->makespan() >= 4);  // 4 -> 3 -> 0 -> 5 -> 6
}

TEST_CASE("galactic oracle with no black holes equals the plain oracle") {
  Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = testutil::random_connected_graph(rng, 10, 5);
    auto inst = sample_random_instance(g, 2, 1, trial);
    if (!inst) continue;
    std::vector<uint8_t> none(g.vertex_count(), 0);
    auto a = exact_bfs_solve(*inst);
    auto b = exact_bfs_solve_galactic(g, none, inst->start, inst->target, 1);
    CHECK(a.status == b.status);
    if (a.status == OracleStatus::Solved)
      CHECK(a.plan->makespan() == b.plan->makespan());
  }
}
