#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "iumapf/oracle.hpp"
#include "iumapf/pibt.hpp"

using namespace iumapf;
using testutil::cycle_graph;
using testutil::path_graph;
using testutil::sorted;

namespace {

Instance make_instance(Graph g, Configuration s, Configuration t, int32_t r) {
  Instance inst;
  inst.graph = std::move(g);
  inst.start = std::move(s);
  inst.target = std::move(t);
  inst.radius = r;
  return inst;
}

Assignment identity_assignment(int32_t n) {
  Assignment a;
  a.target_index.resize(n);
  for (int32_t i = 0; i < n; ++i) a.target_index[i] = i;
  return a;
}

// directed relation on moved agents: a -> b iff a's destination lands within
// r of b's origin; a cycle of length >= 2 is a distance-r rotation
bool has_rotation(const Graph& g, int32_t r, const Configuration& q_from,
                  const Configuration& q_to) {
  const int32_t n = static_cast<int32_t>(q_from.size());
  std::vector<int32_t> moved;
  for (int32_t i = 0; i < n; ++i)
    if (q_from[i] != q_to[i]) moved.push_back(i);
  std::vector<std::vector<int32_t>> succ(n);
  for (int32_t a : moved) {
    auto ball = neighborhood_r(g, q_to[a], r);
    for (int32_t b : moved) {
      if (a != b && std::binary_search(ball.begin(), ball.end(), q_from[b]))
        succ[a].push_back(b);
    }
  }
  std::vector<int32_t> state(n, 0);  // 0 fresh, 1 on stack, 2 done
  auto dfs = [&](auto&& self, int32_t v) -> bool {
    state[v] = 1;
    for (int32_t w : succ[v]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && self(self, w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (int32_t a : moved)
    if (state[a] == 0 && dfs(dfs, a)) return true;
  return false;
}

}  // namespace

TEST_CASE("priority bookkeeping") {
  CHECK(initial_priorities(3) == std::vector<double>{0.25, 0.5, 0.75});
  SUBCASE("parked goals drop to their decimal, others gain one") {
    Graph g = path_graph(5);
    (void)g;
    Configuration targets = {2, 4};
    Configuration q_from = {2, 0};  // agent 0 parked on its goal
    auto a = identity_assignment(2);
    auto p = update_priorities({3.25, 0.25}, q_from, targets, a);
    CHECK(p[0] == doctest::Approx(0.25));
    CHECK(p[1] == doctest::Approx(1.25));
  }
}

TEST_CASE("resolve_deadlock rotates goals along the cycle") {
  Assignment g = identity_assignment(4);
  SUBCASE("empty cycle leaves the assignment alone") {
    CHECK(resolve_deadlock({}, g).target_index == g.target_index);
  }
  SUBCASE("two-cycle is a swap") {
    auto out = resolve_deadlock({0, 2}, g);
    CHECK(out.target_index == std::vector<int32_t>{2, 1, 0, 3});
  }
  SUBCASE("rotation is a bijection") {
    auto out = resolve_deadlock({3, 1, 0}, g);
    CHECK(out.bijective());
  }
}

namespace {

// 8-cycle with pendant goals: agents on ring vertices 0,2,4,6; the goal of the
// agent at ring vertex k is a pendant hanging off ring vertex k+2.
struct PendantRing {
  Graph graph;
  Configuration starts = {0, 2, 4, 6};
  Configuration targets = {8, 9, 10, 11};  // pendants at 2, 4, 6, 0
};

PendantRing pendant_ring() {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int32_t i = 0; i < 8; ++i) edges.emplace_back(i, (i + 1) % 8);
  edges.emplace_back(2, 8);
  edges.emplace_back(4, 9);
  edges.emplace_back(6, 10);
  edges.emplace_back(0, 11);
  PendantRing ring;
  ring.graph = Graph::from_edges(12, edges);
  return ring;
}

}  // namespace

TEST_CASE("deadlock detection and resolution on the pendant ring") {
  PendantRing ring = pendant_ring();
  auto tables = TargetDistances::build(ring.graph, ring.targets);
  PibtEngine engine(ring.graph, 1, ring.targets, &tables);
  engine.begin_step(ring.starts, identity_assignment(4));

  SUBCASE("an agent parked at its goal starts no deadlock") {
    Graph g = path_graph(3);
    Configuration targets = {0};
    auto t2 = TargetDistances::build(g, targets);
    PibtEngine e2(g, 1, targets, &t2);
    e2.begin_step({0}, identity_assignment(1));
    CHECK_FALSE(e2.find_deadlock(0));
  }

  SUBCASE("the four agents form one deadlock cycle") {
    auto cycle = engine.find_deadlock(0);
    REQUIRE(cycle);
    CHECK(sorted(*cycle) == Configuration{0, 1, 2, 3});
  }

  SUBCASE("rotation removes every deadlock") {
    auto cycle = engine.find_deadlock(0);
    REQUIRE(cycle);
    Assignment rotated = resolve_deadlock(*cycle, identity_assignment(4));
    CHECK(rotated.bijective());
    engine.begin_step(ring.starts, rotated);
    for (int32_t i = 0; i < 4; ++i) CHECK_FALSE(engine.find_deadlock(i));
    // each agent now owns the pendant hanging off its own ring vertex
    for (int32_t i = 0; i < 4; ++i) {
      VertexId goal = ring.targets[rotated.target_index[i]];
      CHECK(ring.graph.has_edge(ring.starts[i], goal));
    }
  }

  SUBCASE("a chain onto an unoccupied vertex is no deadlock") {
    PendantRing ring2 = pendant_ring();
    Configuration targets3 = {8, 9, 10};  // drop the fourth agent entirely
    auto t2 = TargetDistances::build(ring2.graph, targets3);
    PibtEngine e2(ring2.graph, 1, targets3, &t2);
    e2.begin_step({0, 2, 4}, identity_assignment(3));  // vertex 6 free
    CHECK_FALSE(e2.find_deadlock(0));
  }
}

TEST_CASE("swap detection") {
  Graph g = path_graph(5);
  SUBCASE("route vertex unoccupied") {
    Configuration targets = {4};
    auto tables = TargetDistances::build(g, targets);
    PibtEngine engine(g, 1, targets, &tables);
    engine.begin_step({0}, identity_assignment(1));
    CHECK_FALSE(engine.detect_swap(0, 1));
  }
  SUBCASE("agent parked on its goal on the route") {
    Configuration targets = {4, 2};
    auto tables = TargetDistances::build(g, targets);
    PibtEngine engine(g, 1, targets, &tables);
    engine.begin_step({0, 2}, identity_assignment(2));
    auto partner = engine.detect_swap(0, 1);  // next^1(1, 4) = 2, parked there
    REQUIRE(partner);
    CHECK(*partner == 1);
  }
  SUBCASE("occupant whose goal differs") {
    Configuration targets = {4, 3};
    auto tables = TargetDistances::build(g, targets);
    PibtEngine engine(g, 1, targets, &tables);
    engine.begin_step({0, 2}, identity_assignment(2));
    CHECK_FALSE(engine.detect_swap(0, 1));
  }
}

TEST_CASE("single agent steps greedily") {
  Graph g = path_graph(5);
  auto out = iu_pibt_step(g, 0, {0}, {4}, identity_assignment(1),
                          initial_priorities(1));
  CHECK(out.q_to == Configuration{1});
  CHECK(out.planner_calls == 1);
}

TEST_CASE("simultaneous ring rotation is refused") {
  // every agent needs its clockwise neighbor's spot; the generator returns
  // the input configuration unchanged
  Graph g = cycle_graph(8);
  Configuration starts = {0, 2, 4, 6};
  Configuration targets = {1, 3, 5, 7};
  auto out = iu_pibt_step(g, 1, starts, targets, identity_assignment(4),
                          initial_priorities(4));
  CHECK(out.q_to == starts);
  CHECK(out.planner_calls == 4);
}

TEST_CASE("five-agent walkthrough on the partial grid") {
  // 3x4 grid fragment with cell (2,1) missing and a couple of absent edges;
  // ids: (1,1)=0 (1,2)=1 (1,3)=2 (1,4)=3 (2,2)=4 (2,3)=5 (2,4)=6
  //      (3,1)=7 (3,2)=8 (3,3)=9 (3,4)=10
  std::vector<std::pair<VertexId, VertexId>> edges = {
      {0, 1}, {1, 2}, {2, 3},            // top row
      {4, 5},                            // middle row
      {7, 8}, {8, 9}, {9, 10},           // bottom row
      {4, 1}, {5, 2}, {6, 3},            // middle-top verticals
      {9, 5}, {10, 6},                   // bottom-middle verticals
  };
  Graph g = Graph::from_edges(11, edges);
  // agents a..e at 4, 2, 6, 9, 0; goals 2, 9, 6 (parked), 7, 0 (parked)
  Configuration starts = {4, 2, 6, 9, 0};
  Configuration targets = {9, 6, 7, 0, 2};
  Assignment assign;
  assign.target_index = {4, 0, 1, 2, 3};
  auto out = iu_pibt_step(g, 1, starts, targets, assign, initial_priorities(5));
  CHECK(out.q_to == Configuration{5, 3, 10, 8, 0});
  CHECK(out.planner_calls == 5);
  CHECK(check_transition(g, starts, out.q_to));
  CHECK(is_distance_r_independent(g, out.q_to, 1));
}

TEST_CASE("run_pibt basics") {
  SUBCASE("start equals target") {
    Graph g = path_graph(5);
    auto run = run_pibt(make_instance(g, {0, 4}, {4, 0}, 1), 50);
    REQUIRE(run.plan);
    CHECK(run.plan->steps.size() == 1);
  }
  SUBCASE("single agent walks the path") {
    Graph g = path_graph(5);
    auto run = run_pibt(make_instance(g, {0}, {4}, 0), 50);
    REQUIRE(run.plan);
    CHECK(run.plan->makespan() == 4);
  }
  SUBCASE("ring rotation instance stalls") {
    Graph g = cycle_graph(8);
    auto run = run_pibt(make_instance(g, {0, 2, 4, 6}, {1, 3, 5, 7}, 1), 100);
    CHECK_FALSE(run.plan);
    CHECK(run.steps_taken == 100);
  }
  SUBCASE("ladder pass-by livelocks") {
    Graph g = testutil::grid_graph(2, 4);
    // one agent parked mid-corridor, the other must slip past at r=1
    auto inst = make_instance(g, {1, 4}, {1, 6}, 1);
    auto oracle = exact_bfs_solve(inst);
    REQUIRE(oracle.status == OracleStatus::Solved);  // feasible, yet:
    auto run = run_pibt(inst, 100);
    CHECK_FALSE(run.plan);
  }
}

TEST_CASE("generator soundness and rotation freedom on random states") {
  Rng rng(404);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 200; ++trial) {
    int32_t v_count = 12 + static_cast<int32_t>(rng.bounded(49));
    Graph g = testutil::random_connected_graph(rng, v_count, v_count / 2);
    int32_t r = static_cast<int32_t>(rng.bounded(4));
    int32_t n = 2 + static_cast<int32_t>(rng.bounded(7));
    auto inst = sample_random_instance(g, n, r, trial);
    if (!inst) continue;
    ++checked;
    // random bijection and unique decimals
    Assignment assign = identity_assignment(n);
    rng.shuffle(assign.target_index);
    std::vector<double> p = initial_priorities(n);
    auto out = iu_pibt_step(g, r, inst->start, inst->target, assign, p);
    CHECK(check_transition(g, inst->start, out.q_to));
    CHECK(is_distance_r_independent(g, out.q_to, r));
    CHECK(out.planner_calls == n);
    CHECK(out.assignment.bijective());
    CHECK_FALSE(has_rotation(g, r, inst->start, out.q_to));
  }
  CHECK(checked == 200);
}

TEST_CASE("complete at r=0 on graphs without disconnecting edge pairs") {
  Rng rng(88);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 25; ++trial) {
    int32_t v_count = 5 + static_cast<int32_t>(rng.bounded(8));
    Graph g = testutil::random_connected_graph(rng, v_count, v_count);
    if (!testutil::no_disconnecting_edge_pair(g)) continue;
    int32_t n = 1 + static_cast<int32_t>(rng.bounded(v_count - 1));
    auto inst = sample_random_instance(g, n, 0, trial);
    if (!inst) continue;
    ++tested;
    auto run = run_pibt(*inst, int64_t{10} * n * v_count);
    REQUIRE(run.plan);
    CHECK(validate_plan(*inst, *run.plan).ok());
  }
  CHECK(tested == 25);
}
