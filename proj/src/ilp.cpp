#include "iumapf/ilp.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace iumapf {

int32_t IlpModel::add_var(std::string name, int32_t lower, int32_t upper) {
  vars.push_back({std::move(name), lower, upper});
  return static_cast<int32_t>(vars.size()) - 1;
}

namespace {

// planet pairs (u < v) within distance r of each other inside G[P]
std::vector<std::pair<VertexId, VertexId>> conflict_pairs(
    const Graph& graph, const std::vector<uint8_t>& is_black_hole, int32_t r) {
  const int32_t v_count = graph.vertex_count();
  std::vector<std::pair<VertexId, VertexId>> pairs;
  std::vector<int32_t> depth(v_count);
  std::vector<uint32_t> stamp(v_count, 0);
  std::vector<VertexId> queue;
  uint32_t epoch = 0;
  for (VertexId s = 0; s < v_count; ++s) {
    if (is_black_hole[s]) continue;
    ++epoch;
    queue.clear();
    queue.push_back(s);
    stamp[s] = epoch;
    depth[s] = 0;
    std::vector<VertexId> ball;
    for (size_t head = 0; head < queue.size(); ++head) {
      VertexId u = queue[head];
      if (u > s) ball.push_back(u);
      if (depth[u] == r) continue;
      auto [b, e] = graph.neighbors(u);
      for (auto it = b; it != e; ++it) {
        if (is_black_hole[*it] || stamp[*it] == epoch) continue;
        stamp[*it] = epoch;
        depth[*it] = depth[u] + 1;
        queue.push_back(*it);
      }
    }
    std::sort(ball.begin(), ball.end());
    for (VertexId v : ball) pairs.emplace_back(s, v);
  }
  return pairs;
}

// closed neighborhoods in ascending vertex order, CSR over all vertices
struct ClosedNbhd {
  std::vector<int32_t> offsets;
  std::vector<VertexId> members;

  explicit ClosedNbhd(const Graph& graph) {
    const int32_t v_count = graph.vertex_count();
    offsets.assign(v_count + 1, 0);
    for (VertexId v = 0; v < v_count; ++v)
      offsets[v + 1] = offsets[v] + graph.degree(v) + 1;
    members.resize(offsets[v_count]);
    for (VertexId v = 0; v < v_count; ++v) {
      int32_t slot = offsets[v];
      auto [b, e] = graph.neighbors(v);
      auto it = b;
      for (; it != e && *it < v; ++it) members[slot++] = *it;
      members[slot++] = v;
      for (; it != e; ++it) members[slot++] = *it;
    }
  }

  // CSR slot of w inside v's closed neighborhood; -1 if absent
  int32_t slot(VertexId v, VertexId w) const {
    auto first = members.begin() + offsets[v];
    auto last = members.begin() + offsets[v + 1];
    auto it = std::lower_bound(first, last, w);
    if (it == last || *it != w) return -1;
    return static_cast<int32_t>(it - members.begin());
  }
};

}  // namespace

IlpModel build_galactic_model(const Graph& graph,
                              const std::vector<uint8_t>& is_black_hole,
                              const Configuration& start, const Configuration& target,
                              int32_t r, int32_t tau) {
  const int32_t v_count = graph.vertex_count();
  const int32_t n = static_cast<int32_t>(start.size());
  std::vector<uint8_t> near_endpoint(v_count, 0);
  for (VertexId v : start) near_endpoint[v] = 1;
  for (VertexId v : target) near_endpoint[v] = 1;
  for (VertexId v : start)
    if (is_black_hole[v]) throw std::invalid_argument("start vertex on a black hole");
  for (VertexId v : target)
    if (is_black_hole[v]) throw std::invalid_argument("target vertex on a black hole");
  for (VertexId b = 0; b < v_count; ++b) {
    if (!is_black_hole[b]) continue;
    auto [nb, ne] = graph.neighbors(b);
    for (auto it = nb; it != ne; ++it) {
      if (near_endpoint[*it])
        throw std::invalid_argument("black hole adjacent to the start/target sets");
    }
  }

  IlpModel model;
  ClosedNbhd closed(graph);
  // layout: per time layer, occupancies first, then that layer's flows
  std::vector<int32_t> x_index(static_cast<size_t>(v_count) * (tau + 1));
  std::vector<std::vector<int32_t>> f_index(tau);
  for (int32_t t = 0; t <= tau; ++t) {
    for (VertexId v = 0; v < v_count; ++v) {
      x_index[static_cast<size_t>(t) * v_count + v] = model.add_var(
          "x_v" + std::to_string(v) + "_t" + std::to_string(t), 0,
          is_black_hole[v] ? n : 1);
    }
    if (t == tau) break;
    auto& layer = f_index[t];
    layer.resize(closed.members.size());
    for (VertexId u = 0; u < v_count; ++u) {
      for (int32_t s = closed.offsets[u]; s < closed.offsets[u + 1]; ++s) {
        VertexId v = closed.members[s];
        layer[s] = model.add_var("f_u" + std::to_string(u) + "_v" +
                                     std::to_string(v) + "_t" + std::to_string(t),
                                 0, (is_black_hole[u] && is_black_hole[v]) ? n : 1);
      }
    }
  }
  auto x_at = [&](VertexId v, int32_t t) {
    return x_index[static_cast<size_t>(t) * v_count + v];
  };

  std::vector<uint8_t> in_start(v_count, 0), in_target(v_count, 0);
  for (VertexId v : start) in_start[v] = 1;
  for (VertexId v : target) in_target[v] = 1;

  // boundary rows: t = 0 fixed to S, t = tau fixed to T
  for (VertexId v = 0; v < v_count; ++v)
    model.rows.push_back({{{x_at(v, 0), 1}}, IlpModel::Rel::Eq, in_start[v] ? 1 : 0});
  for (VertexId v = 0; v < v_count; ++v)
    model.rows.push_back({{{x_at(v, tau), 1}}, IlpModel::Rel::Eq, in_target[v] ? 1 : 0});

  // outflow: everything on u at step t leaves along the closed neighborhood
  for (int32_t t = 0; t < tau; ++t) {
    for (VertexId u = 0; u < v_count; ++u) {
      IlpModel::Row row;
      for (int32_t s = closed.offsets[u]; s < closed.offsets[u + 1]; ++s)
        row.terms.push_back({f_index[t][s], 1});
      row.terms.push_back({x_at(u, t), -1});
      model.rows.push_back(std::move(row));
    }
  }
  // inflow: everything on u at step t arrived along the closed neighborhood
  for (int32_t t = 1; t <= tau; ++t) {
    for (VertexId u = 0; u < v_count; ++u) {
      IlpModel::Row row;
      for (int32_t s = closed.offsets[u]; s < closed.offsets[u + 1]; ++s) {
        VertexId v = closed.members[s];
        row.terms.push_back({f_index[t - 1][closed.slot(v, u)], 1});
      }
      row.terms.push_back({x_at(u, t), -1});
      model.rows.push_back(std::move(row));
    }
  }
  // pairwise exclusion within distance r
  auto pairs = conflict_pairs(graph, is_black_hole, r);
  for (int32_t t = 0; t <= tau; ++t) {
    for (auto [u, v] : pairs) {
      model.rows.push_back(
          {{{x_at(u, t), 1}, {x_at(v, t), 1}}, IlpModel::Rel::Le, 1});
    }
  }
  return model;
}

IlpModel build_bounded_model(const Instance& instance, int32_t tau) {
  std::vector<uint8_t> no_black_holes(instance.graph.vertex_count(), 0);
  return build_galactic_model(instance.graph, no_black_holes, instance.start,
                              instance.target, instance.radius, tau);
}

void export_lp(const IlpModel& model, std::ostream& sink) {
  sink << "Minimize\n obj: 0\nSubject To\n";
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const auto& row = model.rows[i];
    sink << " c" << i << ":";
    for (size_t k = 0; k < row.terms.size(); ++k) {
      int32_t coef = row.terms[k].coef;
      if (k == 0) {
        sink << ' ';
        if (coef < 0) sink << "- ";
      } else {
        sink << (coef >= 0 ? " + " : " - ");
      }
      if (coef != 1 && coef != -1) sink << std::abs(coef) << ' ';
      sink << model.vars[row.terms[k].var].name;
    }
    sink << (row.rel == IlpModel::Rel::Eq ? " = " : " <= ") << row.rhs << "\n";
  }
  if (!model.vars.empty()) {
    sink << "Bounds\n";
    for (const auto& var : model.vars)
      sink << ' ' << var.lower << " <= " << var.name << " <= " << var.upper << "\n";
    sink << "Generals\n";
    for (const auto& var : model.vars) sink << ' ' << var.name << "\n";
  }
  sink << "End\n";
}

std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  export_lp(model, out);
  return out.str();
}

bool satisfies(const IlpModel& model, const std::vector<int32_t>& values) {
  if (values.size() != model.vars.size()) return false;
  for (size_t i = 0; i < model.vars.size(); ++i) {
    if (values[i] < model.vars[i].lower || values[i] > model.vars[i].upper)
      return false;
  }
  for (const auto& row : model.rows) {
    int64_t sum = 0;
    for (const auto& term : row.terms) sum += int64_t{term.coef} * values[term.var];
    if (row.rel == IlpModel::Rel::Eq ? sum != row.rhs : sum > row.rhs) return false;
  }
  return true;
}

namespace {

struct RowState {
  int64_t sum = 0;      // contribution of assigned variables
  int64_t min_pot = 0;  // minimum achievable over unassigned variables
  int64_t max_pot = 0;
};

int64_t div_ceil(int64_t a, int64_t b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}
int64_t div_floor(int64_t a, int64_t b) {  // b > 0
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace

IlpFeasibility check_feasible(const IlpModel& model, int64_t node_budget) {
  const int32_t var_count = static_cast<int32_t>(model.vars.size());
  std::vector<int32_t> deg(var_count + 1, 0);
  for (const auto& row : model.rows)
    for (const auto& term : row.terms) ++deg[term.var + 1];
  for (int32_t v = 0; v < var_count; ++v) deg[v + 1] += deg[v];
  std::vector<std::pair<int32_t, int32_t>> var_rows(deg[var_count]);
  {
    std::vector<int32_t> fill(deg.begin(), deg.end() - 1);
    for (size_t ri = 0; ri < model.rows.size(); ++ri)
      for (const auto& term : model.rows[ri].terms)
        var_rows[fill[term.var]++] = {static_cast<int32_t>(ri), term.coef};
  }

  std::vector<RowState> rows(model.rows.size());
  for (size_t ri = 0; ri < model.rows.size(); ++ri) {
    for (const auto& term : model.rows[ri].terms) {
      const auto& var = model.vars[term.var];
      int64_t a = int64_t{term.coef} * var.lower;
      int64_t b = int64_t{term.coef} * var.upper;
      rows[ri].min_pot += std::min(a, b);
      rows[ri].max_pot += std::max(a, b);
    }
  }

  int64_t nodes = 0;
  bool budget_hit = false;

  auto dfs = [&](auto&& self, int32_t k) -> bool {
    if (k == var_count) return true;
    if (++nodes > node_budget) {
      budget_hit = true;
      return false;
    }
    const auto& var = model.vars[k];
    int64_t lo = var.lower, hi = var.upper;
    // tighten [lo, hi] against every row this variable participates in
    for (int32_t e = deg[k]; e < deg[k + 1] && lo <= hi; ++e) {
      auto [ri, coef] = var_rows[e];
      const auto& rs = rows[ri];
      int64_t cmin = std::min<int64_t>(int64_t{coef} * var.lower,
                                       int64_t{coef} * var.upper);
      int64_t cmax = std::max<int64_t>(int64_t{coef} * var.lower,
                                       int64_t{coef} * var.upper);
      int64_t rest_min = rs.min_pot - cmin;
      int64_t rest_max = rs.max_pot - cmax;
      int64_t rhs = model.rows[ri].rhs;
      // coef * value must land in [need_lo, need_hi]
      int64_t need_hi = rhs - rs.sum - rest_min;
      int64_t need_lo = model.rows[ri].rel == IlpModel::Rel::Le
                            ? INT64_MIN / 4
                            : rhs - rs.sum - rest_max;
      if (coef > 0) {
        lo = std::max(lo, div_ceil(need_lo, coef));
        hi = std::min(hi, div_floor(need_hi, coef));
      } else {
        lo = std::max(lo, div_ceil(-need_hi, -coef));
        hi = std::min(hi, div_floor(-need_lo, -coef));
      }
    }
    for (int64_t val = lo; val <= hi; ++val) {
      for (int32_t e = deg[k]; e < deg[k + 1]; ++e) {
        auto [ri, coef] = var_rows[e];
        int64_t a = int64_t{coef} * var.lower, b = int64_t{coef} * var.upper;
        rows[ri].sum += coef * val;
        rows[ri].min_pot -= std::min(a, b);
        rows[ri].max_pot -= std::max(a, b);
      }
      if (self(self, k + 1)) return true;
      for (int32_t e = deg[k]; e < deg[k + 1]; ++e) {
        auto [ri, coef] = var_rows[e];
        int64_t a = int64_t{coef} * var.lower, b = int64_t{coef} * var.upper;
        rows[ri].sum -= coef * val;
        rows[ri].min_pot += std::min(a, b);
        rows[ri].max_pot += std::max(a, b);
      }
      if (budget_hit) return false;
    }
    return false;
  };

  if (dfs(dfs, 0)) return IlpFeasibility::Feasible;
  return budget_hit ? IlpFeasibility::Budget : IlpFeasibility::Infeasible;
}

}  // namespace iumapf
