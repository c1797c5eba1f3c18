#include "iumapf/lacam.hpp"

#include <algorithm>
#include <unordered_map>

#include "iumapf/dist_tables.hpp"
#include "iumapf/pibt.hpp"

namespace iumapf {

namespace {

struct SearchNode {
  Configuration config;
  Assignment g;
  std::vector<std::vector<int32_t>> banned;  // per agent, banned target indices
  std::vector<double> p;                     // priorities carried into expansion
  SearchNode* parent = nullptr;
  std::deque<Constraint> constraints;        // seeded with the empty constraint

  // filled on first expansion
  bool prepared = false;
  std::vector<double> p_updated;
  std::vector<int32_t> order;
};

Configuration sorted_copy(const Configuration& c) {
  Configuration s = c;
  std::sort(s.begin(), s.end());
  return s;
}

class Solver {
 public:
  Solver(const Instance& instance, const LacamOptions& options)
      : instance_(instance),
        options_(options),
        n_(instance.agent_count()),
        tables_(TargetDistances::build(instance.graph, instance.target)),
        engine_(instance.graph, instance.radius, instance.target, &tables_),
        goal_sorted_(sorted_copy(instance.target)) {}

  LacamResult solve() {
    const auto deadline = std::chrono::steady_clock::now() + options_.timeout;
    CostMatrix start_cost = cost_from(instance_.start);
    SearchNode* root = &arena_.emplace_back();
    root->config = instance_.start;
    root->g = hungarian_assignment(start_cost);
    root->banned.assign(n_, {});
    root->p = initial_priorities(n_);
    root->constraints.push_back(Constraint{});
    open_.push_back(root);
    explored_.emplace(sorted_copy(root->config), root);

    LacamResult result;
    while (!open_.empty()) {
      if (std::chrono::steady_clock::now() >= deadline) {
        result.status = SolveStatus::Timeout;
        break;
      }
      SearchNode* node = open_.back();
      if (sorted_copy(node->config) == goal_sorted_) {
        result.status = SolveStatus::Solved;
        result.plan = extract_plan(node);
        break;
      }
      if (node->constraints.empty()) {
        open_.pop_back();
        continue;
      }
      prepare(node);
      Constraint constraint = std::move(node->constraints.front());
      node->constraints.pop_front();
      append_children(node, constraint);
      ++result.expansions;

      auto generated =
          engine_.constrained_step(node->config, node->g, constraint.pins, node->order);
      ++result.generations;
      if (!generated) continue;
      auto& [q_new, g_new] = *generated;

      try_reinsert(q_new, g_new, node);

      Configuration key = sorted_copy(q_new);
      if (explored_.find(key) != explored_.end()) continue;
      SearchNode* child = &arena_.emplace_back();
      child->config = q_new;
      child->g = g_new;
      child->banned.assign(n_, {});
      child->p = node->p_updated;
      child->parent = node;
      child->constraints.push_back(Constraint{});
      open_.push_back(child);
      explored_.emplace(std::move(key), child);
    }
    result.reinsertions = reinsertions_;
    return result;
  }

 private:
  CostMatrix cost_from(const Configuration& positions) const {
    CostMatrix m = CostMatrix::zeros(n_);
    for (int32_t i = 0; i < n_; ++i)
      for (int32_t j = 0; j < n_; ++j) m.at(i, j) = tables_.dist(j, positions[i]);
    return m;
  }

  void prepare(SearchNode* node) {
    if (node->prepared) return;
    node->prepared = true;
    node->p_updated =
        update_priorities(node->p, node->config, instance_.target, node->g);
    node->order.resize(n_);
    for (int32_t i = 0; i < n_; ++i) node->order[i] = i;
    std::sort(node->order.begin(), node->order.end(), [&](int32_t a, int32_t b) {
      double pa = node->p_updated[node->g.target_index[a]];
      double pb = node->p_updated[node->g.target_index[b]];
      return pa != pb ? pa > pb : a < b;
    });
  }

  // Lazy constraint tree: a popped constraint pinning k agents spawns children
  // that additionally pin the next agent in priority order to each vertex of
  // its closed neighborhood, nearest-to-goal first.
  void append_children(SearchNode* node, const Constraint& constraint) {
    size_t depth = constraint.pins.size();
    if (depth >= static_cast<size_t>(n_)) return;
    int32_t agent = node->order[depth];
    VertexId from = node->config[agent];
    const auto& table = tables_.table(node->g.target_index[agent]);
    std::vector<VertexId> cands;
    cands.push_back(from);
    auto [nb, ne] = instance_.graph.neighbors(from);
    cands.insert(cands.end(), nb, ne);
    std::sort(cands.begin(), cands.end(), [&](VertexId a, VertexId b) {
      int32_t da = table[a], db = table[b];
      return da != db ? da < db : a < b;
    });
    for (VertexId v : cands) {
      Constraint child = constraint;
      child.pins.emplace_back(agent, v);
      node->constraints.push_back(std::move(child));
    }
  }

  // Livelock handling: a regenerated (config, assignment) pair within the
  // detection depth gets the stuck agents' goals banned and a fresh node with
  // a rewired assignment pushed, constraints reset.
  void try_reinsert(const Configuration& q_new, const Assignment& g_new,
                    SearchNode* node) {
    SearchNode* anc = node;
    for (int32_t k = 0; k <= options_.livelock_depth && anc != nullptr;
         ++k, anc = anc->parent) {
      if (anc->config != q_new || anc->g.target_index != g_new.target_index) continue;
      std::vector<int32_t> stuck;
      for (int32_t i = 0; i < n_; ++i) {
        if (q_new[i] == anc->config[i] &&
            q_new[i] != instance_.target[g_new.target_index[i]])
          stuck.push_back(i);
      }
      if (stuck.empty()) return;
      if (reinsertions_ >= int64_t{n_} * n_) return;  // ban growth bound
      auto banned = anc->banned;
      for (int32_t i : stuck) {
        int32_t goal = g_new.target_index[i];
        auto& b = banned[i];
        if (std::find(b.begin(), b.end(), goal) == b.end()) b.push_back(goal);
      }
      auto rewired = reassign_with_bans(cost_from(q_new), banned);
      if (rewired) {
        SearchNode* fresh = &arena_.emplace_back();
        fresh->config = q_new;
        fresh->g = std::move(*rewired);
        fresh->banned = std::move(banned);
        fresh->p = node->p_updated;
        fresh->parent = node;
        fresh->constraints.push_back(Constraint{});
        open_.push_back(fresh);
        ++reinsertions_;
      }
      return;
    }
  }

  Plan extract_plan(SearchNode* goal) const {
    Plan plan;
    for (SearchNode* n = goal; n != nullptr; n = n->parent)
      plan.steps.push_back(n->config);
    std::reverse(plan.steps.begin(), plan.steps.end());
    return plan;
  }

  const Instance& instance_;
  LacamOptions options_;
  int32_t n_;
  TargetDistances tables_;
  PibtEngine engine_;
  Configuration goal_sorted_;
  std::deque<SearchNode> arena_;
  std::vector<SearchNode*> open_;
  std::unordered_map<Configuration, SearchNode*, ConfigHash> explored_;
  int64_t reinsertions_ = 0;
};

}  // namespace

LacamResult iu_lacam_solve(const Instance& instance, const LacamOptions& options) {
  Solver solver(instance, options);
  return solver.solve();
}

}  // namespace iumapf
