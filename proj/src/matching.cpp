#include "iumapf/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "iumapf/dist_tables.hpp"

namespace iumapf {

namespace {
constexpr int64_t kBanCost = int64_t{1} << 50;
}

bool Assignment::bijective() const {
  std::vector<uint8_t> seen(target_index.size(), 0);
  for (int32_t t : target_index) {
    if (t < 0 || t >= static_cast<int32_t>(target_index.size()) || seen[t]) return false;
    seen[t] = 1;
  }
  return true;
}

CostMatrix hop_cost_matrix(const Graph& graph, const Configuration& starts,
                           const Configuration& targets) {
  if (starts.size() != targets.size())
    throw std::invalid_argument("cost matrix needs |S| = |T|");
  auto tables = TargetDistances::build(graph, targets);
  CostMatrix m = CostMatrix::zeros(static_cast<int32_t>(starts.size()));
  for (int32_t i = 0; i < m.n; ++i)
    for (int32_t j = 0; j < m.n; ++j) m.at(i, j) = tables.dist(j, starts[i]);
  return m;
}

// Hungarian method with row/column potentials; 1-based internal indexing.
Assignment hungarian_assignment(const CostMatrix& cost) {
  const int32_t n = cost.n;
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<int32_t> match(n + 1, 0);  // column -> row (1-based)
  std::vector<int32_t> way(n + 1, 0);
  for (int32_t i = 1; i <= n; ++i) {
    match[0] = i;
    int32_t j0 = 0;
    std::vector<int64_t> minv(n + 1, kInf);
    std::vector<uint8_t> used(n + 1, 0);
    do {
      used[j0] = 1;
      int32_t i0 = match[j0], j1 = 0;
      int64_t delta = kInf;
      for (int32_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        int64_t cur = cost.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int32_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int32_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  Assignment a;
  a.target_index.assign(n, -1);
  for (int32_t j = 1; j <= n; ++j) a.target_index[match[j] - 1] = j - 1;
  return a;
}

int64_t assignment_cost(const CostMatrix& cost, const Assignment& a) {
  int64_t total = 0;
  for (int32_t i = 0; i < cost.n; ++i) total += cost.at(i, a.target_index[i]);
  return total;
}

std::optional<Assignment> reassign_with_bans(
    const CostMatrix& cost, const std::vector<std::vector<int32_t>>& banned_targets) {
  CostMatrix priced = cost;
  for (int32_t i = 0; i < cost.n; ++i) {
    for (int32_t j : banned_targets[i]) priced.at(i, j) = kBanCost;
  }
  Assignment a = hungarian_assignment(priced);
  for (int32_t i = 0; i < cost.n; ++i) {
    if (priced.at(i, a.target_index[i]) >= kBanCost) return std::nullopt;
  }
  return a;
}

}  // namespace iumapf
