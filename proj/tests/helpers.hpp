#pragma once

#include <algorithm>
#include <vector>

#include "iumapf/graph.hpp"
#include "iumapf/instance.hpp"

namespace testutil {

using iumapf::Configuration;
using iumapf::Graph;
using iumapf::Rng;
using iumapf::VertexId;

inline Graph path_graph(int32_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_graph(int32_t n) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int32_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

// full o x o grid, 4-connected, row-major ids
inline Graph grid_graph(int32_t rows, int32_t cols) {
  std::vector<uint8_t> mask(static_cast<size_t>(rows) * cols, 1);
  return iumapf::grid_from_mask(rows, cols, mask).graph;
}

// random spanning tree plus extra edges; always connected
inline Graph random_connected_graph(Rng& rng, int32_t n, int32_t extra_edges) {
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int32_t v = 1; v < n; ++v)
    edges.emplace_back(v, static_cast<VertexId>(rng.bounded(v)));
  for (int32_t k = 0; k < extra_edges; ++k) {
    VertexId u = static_cast<VertexId>(rng.bounded(n));
    VertexId v = static_cast<VertexId>(rng.bounded(n));
    if (u != v) edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return Graph::from_edges(n, edges);
}

inline Configuration sorted(Configuration c) {
  std::sort(c.begin(), c.end());
  return c;
}

// no edge uv whose endpoint removal disconnects the rest
inline bool no_disconnecting_edge_pair(const Graph& g) {
  const int32_t n = g.vertex_count();
  if (n <= 3) return true;
  for (VertexId u = 0; u < n; ++u) {
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it) {
      VertexId v = *it;
      if (v < u) continue;
      // BFS over the remaining vertices
      VertexId start = iumapf::kNoVertex;
      for (VertexId w = 0; w < n; ++w)
        if (w != u && w != v) {
          start = w;
          break;
        }
      std::vector<uint8_t> seen(n, 0);
      seen[u] = seen[v] = 1;
      std::vector<VertexId> queue = {start};
      seen[start] = 1;
      size_t reached = 1;
      for (size_t head = 0; head < queue.size(); ++head) {
        auto [nb, ne] = g.neighbors(queue[head]);
        for (auto jt = nb; jt != ne; ++jt) {
          if (!seen[*jt]) {
            seen[*jt] = 1;
            ++reached;
            queue.push_back(*jt);
          }
        }
      }
      if (reached != static_cast<size_t>(n - 2)) return false;
    }
  }
  return true;
}

}  // namespace testutil
