#include "iumapf/pibt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace iumapf {

namespace {
double frac(double x) { return x - std::floor(x); }
}  // namespace

std::vector<double> initial_priorities(int32_t n) {
  std::vector<double> p(n);
  for (int32_t i = 0; i < n; ++i) p[i] = static_cast<double>(i + 1) / (n + 1);
  return p;
}

std::vector<double> update_priorities(const std::vector<double>& p,
                                      const Configuration& q_from,
                                      const Configuration& targets,
                                      const Assignment& g) {
  std::vector<int32_t> owner(targets.size(), -1);
  for (size_t i = 0; i < g.target_index.size(); ++i) owner[g.target_index[i]] = i;
  std::vector<double> out(p.size());
  for (size_t t = 0; t < p.size(); ++t) {
    out[t] = (q_from[owner[t]] == targets[t]) ? frac(p[t]) : p[t] + 1.0;
  }
  return out;
}

Assignment resolve_deadlock(const std::vector<int32_t>& cycle, const Assignment& g) {
  Assignment out = g;
  const size_t len = cycle.size();
  for (size_t k = 0; k < len; ++k) {
    out.target_index[cycle[(k + 1) % len]] = g.target_index[cycle[k]];
  }
  return out;
}

PibtEngine::PibtEngine(const Graph& graph, int32_t r, Configuration targets,
                       const TargetDistances* tables)
    : graph_(graph),
      r_(r),
      targets_(std::move(targets)),
      tables_(tables),
      n_(static_cast<int32_t>(targets_.size())),
      occupied_from_(graph.vertex_count(), -1),
      decided_at_(graph.vertex_count(), -1),
      chain_mark_(graph.vertex_count(), 0),
      ball_by_depth_(n_),  // recursion depth is at most one frame per agent
      cand_by_depth_(n_) {}

void PibtEngine::begin_step(const Configuration& q_from, Assignment g) {
  if (static_cast<int32_t>(q_from.size()) != n_ ||
      static_cast<int32_t>(g.target_index.size()) != n_)
    throw std::invalid_argument("configuration/assignment size mismatch");
  for (VertexId v : dirty_) {
    occupied_from_[v] = -1;
    decided_at_[v] = -1;
    chain_mark_[v] = 0;
  }
  dirty_.clear();
  q_from_ = q_from;
  g_ = std::move(g);
  q_to_.assign(n_, kNoVertex);
  for (int32_t i = 0; i < n_; ++i) {
    occupied_from_[q_from_[i]] = i;
    dirty_.push_back(q_from_[i]);
  }
  calls_ = 0;
  depth_ = 0;
}

void PibtEngine::decide(int32_t agent, VertexId v) {
  q_to_[agent] = v;
  if (decided_at_[v] == -1) decided_at_[v] = agent;
  dirty_.push_back(v);
}

void PibtEngine::undecide(int32_t agent, VertexId v) {
  q_to_[agent] = kNoVertex;
  if (decided_at_[v] == agent) {
    decided_at_[v] = -1;
    // a forced stay may have been shadowed by this temporal claim
    for (int32_t j = 0; j < n_; ++j) {
      if (j != agent && q_to_[j] == v) {
        decided_at_[v] = j;
        break;
      }
    }
  }
}

std::optional<int32_t> PibtEngine::detect_swap(int32_t agent, VertexId v) {
  VertexId u = next_step_r(graph_, v, tables_->table(g_.target_index[agent]), r_);
  int32_t j = occupied_from_[u];
  if (j != -1 && q_to_[j] == kNoVertex && targets_[g_.target_index[j]] == u) return j;
  return std::nullopt;
}

std::optional<std::vector<int32_t>> PibtEngine::find_deadlock(int32_t agent,
                                                              VertexId first_hop) {
  const auto& table0 = tables_->table(g_.target_index[agent]);
  VertexId v = next_step_r(graph_, first_hop, table0, r_);
  int32_t j = occupied_from_[v];
  if (j == -1 || j == agent || q_to_[j] != kNoVertex) return std::nullopt;
  std::vector<int32_t> cycle = {agent, j};
  int32_t cur = j;
  while (true) {
    const auto& table = tables_->table(g_.target_index[cur]);
    VertexId vn = next_step_r(graph_, q_from_[cur], table, r_ + 1);
    int32_t k = occupied_from_[vn];
    if (k == -1 || q_to_[k] != kNoVertex) return std::nullopt;
    if (k == agent) return cycle;
    if (std::find(cycle.begin(), cycle.end(), k) != cycle.end()) return std::nullopt;
    cycle.push_back(k);
    cur = k;
  }
}

std::optional<std::vector<int32_t>> PibtEngine::find_deadlock(int32_t agent) {
  VertexId hop =
      next_step_r(graph_, q_from_[agent], tables_->table(g_.target_index[agent]), 1);
  return find_deadlock(agent, hop);
}

void PibtEngine::run_deadlock_preamble(const std::vector<int32_t>& scan_order) {
  for (int32_t pass = 0; pass < n_; ++pass) {
    bool changed = false;
    for (int32_t i : scan_order) {
      if (auto cycle = find_deadlock(i)) {
        g_ = resolve_deadlock(*cycle, g_);
        changed = true;
      }
    }
    if (!changed) break;
  }
}

bool PibtEngine::plan_agent(int32_t agent) {
  ++calls_;
  const int32_t depth = depth_++;
  auto& cands = cand_by_depth_[depth];
  auto& ball = ball_by_depth_[depth];

  const auto& goal_table = tables_->table(g_.target_index[agent]);
  const VertexId from = q_from_[agent];
  cands.clear();
  cands.push_back(from);
  auto [nb, ne] = graph_.neighbors(from);
  cands.insert(cands.end(), nb, ne);
  std::sort(cands.begin(), cands.end(), [&](VertexId a, VertexId b) {
    int32_t da = goal_table[a], db = goal_table[b];
    return da != db ? da < db : a < b;
  });

  for (VertexId v : cands) {
    scratch_.collect(graph_, v, r_, ball);
    bool rejected = false;
    for (VertexId u : ball) {
      if (decided_at_[u] != -1) {  // some decided agent lands within r of v
        rejected = true;
        break;
      }
    }
    if (!rejected) {
      for (VertexId u : ball) {
        if (chain_mark_[u]) {  // closing a distance-r rotation
          rejected = true;
          break;
        }
      }
    }
    if (rejected) continue;

    decide(agent, v);
    auto swap_partner = detect_swap(agent, v);
    if (swap_partner)
      std::swap(g_.target_index[agent], g_.target_index[*swap_partner]);

    chain_mark_[from] = 1;
    bool ok = true;
    for (VertexId u : ball) {
      int32_t j = occupied_from_[u];
      if (j == -1 || j == agent) continue;
      if (q_to_[j] == kNoVertex) plan_agent(j);
      if (q_to_[j] != kNoVertex &&
          std::binary_search(ball.begin(), ball.end(), q_to_[j])) {
        ok = false;
        break;
      }
    }
    chain_mark_[from] = 0;

    if (ok) {
      --depth_;
      return true;
    }
    undecide(agent, v);
    if (swap_partner)
      std::swap(g_.target_index[agent], g_.target_index[*swap_partner]);
  }

  decide(agent, from);  // exhausted: forced stay
  --depth_;
  return false;
}

std::vector<int32_t> PibtEngine::order_by_priority(
    const std::vector<double>& goal_priority) const {
  std::vector<int32_t> order(n_);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
    double pa = goal_priority[g_.target_index[a]];
    double pb = goal_priority[g_.target_index[b]];
    return pa != pb ? pa > pb : a < b;
  });
  return order;
}

StepResult PibtEngine::step(const Configuration& q_from, Assignment g,
                            const std::vector<double>& p) {
  begin_step(q_from, std::move(g));
  // scan order for deadlock detection mirrors the planning order
  run_deadlock_preamble(
      order_by_priority(update_priorities(p, q_from_, targets_, g_)));
  std::vector<double> p_next = update_priorities(p, q_from_, targets_, g_);
  for (int32_t i : order_by_priority(p_next)) {
    if (q_to_[i] == kNoVertex) plan_agent(i);
  }
  return {q_to_, g_, std::move(p_next), calls_};
}

std::optional<std::pair<Configuration, Assignment>> PibtEngine::constrained_step(
    const Configuration& q_from, Assignment g,
    const std::vector<std::pair<int32_t, VertexId>>& pins,
    const std::vector<int32_t>& order) {
  begin_step(q_from, std::move(g));
  std::vector<VertexId> ball;
  for (auto [agent, v] : pins) {
    scratch_.collect(graph_, v, r_, ball);
    for (VertexId u : ball) {
      if (decided_at_[u] != -1) return std::nullopt;  // pins collide already
    }
    decide(agent, v);
  }
  if (pins.empty()) run_deadlock_preamble(order);
  for (int32_t i : order) {
    if (q_to_[i] == kNoVertex) plan_agent(i);
  }
  if (!is_distance_r_independent(graph_, q_to_, r_)) return std::nullopt;
  return std::make_pair(q_to_, g_);
}

StepResult iu_pibt_step(const Graph& graph, int32_t r, const Configuration& q_from,
                        const Configuration& targets, const Assignment& g,
                        const std::vector<double>& p) {
  auto tables = TargetDistances::build(graph, targets);
  PibtEngine engine(graph, r, targets, &tables);
  return engine.step(q_from, g, p);
}

PibtRunResult run_pibt(const Instance& instance, int64_t max_steps,
                       std::optional<std::chrono::steady_clock::time_point> deadline) {
  const auto& graph = instance.graph;
  auto tables = TargetDistances::build(graph, instance.target);
  CostMatrix cost = CostMatrix::zeros(instance.agent_count());
  for (int32_t i = 0; i < cost.n; ++i)
    for (int32_t j = 0; j < cost.n; ++j)
      cost.at(i, j) = tables.dist(j, instance.start[i]);
  Assignment g = hungarian_assignment(cost);
  std::vector<double> p = initial_priorities(instance.agent_count());

  Configuration target_sorted = instance.target;
  std::sort(target_sorted.begin(), target_sorted.end());
  auto reached = [&](const Configuration& q) {
    Configuration s = q;
    std::sort(s.begin(), s.end());
    return s == target_sorted;
  };

  PibtEngine engine(graph, instance.radius, instance.target, &tables);
  Plan plan;
  plan.steps.push_back(instance.start);
  Configuration cur = instance.start;
  PibtRunResult result;
  for (int64_t step = 0;; ++step) {
    if (reached(cur)) {
      result.plan = std::move(plan);
      result.last = cur;
      result.steps_taken = step;
      return result;
    }
    if (step >= max_steps ||
        (deadline && std::chrono::steady_clock::now() >= *deadline)) {
      result.last = cur;
      result.steps_taken = step;
      return result;
    }
    StepResult sr = engine.step(cur, std::move(g), p);
    cur = sr.q_to;
    g = std::move(sr.assignment);
    p = std::move(sr.priorities);
    plan.steps.push_back(cur);
  }
}

}  // namespace iumapf
