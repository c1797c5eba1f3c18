#include "iumapf/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iumapf {

Graph Graph::from_edges(int32_t vertex_count,
                        const std::vector<std::pair<VertexId, VertexId>>& edges) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::vector<VertexId>> adj(vertex_count);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  Graph g;
  g.vertex_count_ = vertex_count;
  g.offsets_.assign(1, 0);
  g.offsets_.reserve(vertex_count + 1);
  for (int32_t v = 0; v < vertex_count; ++v) {
    auto& nb = adj[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    g.adj_.insert(g.adj_.end(), nb.begin(), nb.end());
    g.offsets_.push_back(static_cast<int32_t>(g.adj_.size()));
  }
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto [b, e] = neighbors(u);
  return std::binary_search(b, e, v);
}

bool Graph::is_connected() const {
  if (vertex_count_ <= 1) return true;
  auto d = bfs_distances(*this, 0);
  for (int32_t v = 0; v < vertex_count_; ++v)
    if (d.dist[v] == DistanceTable::kUnreachable) return false;
  return true;
}

void Graph::set_coords(std::vector<GridPos> coords) {
  if (static_cast<int32_t>(coords.size()) != vertex_count_)
    throw std::invalid_argument("coords size mismatch");
  coords_ = std::move(coords);
}

DistanceTable bfs_distances(const Graph& g, VertexId source) {
  DistanceTable t;
  t.source = source;
  t.dist.assign(g.vertex_count(), DistanceTable::kUnreachable);
  t.dist[source] = 0;
  std::vector<VertexId> queue;
  queue.reserve(g.vertex_count());
  queue.push_back(source);
  for (size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it) {
      if (t.dist[*it] == DistanceTable::kUnreachable) {
        t.dist[*it] = t.dist[u] + 1;
        queue.push_back(*it);
      }
    }
  }
  return t;
}

void BallScratch::collect(const Graph& g, VertexId v, int32_t r,
                          std::vector<VertexId>& out) {
  if (stamp_.size() != static_cast<size_t>(g.vertex_count())) {
    stamp_.assign(g.vertex_count(), 0);
    depth_.assign(g.vertex_count(), 0);
    epoch_ = 0;
  }
  ++epoch_;
  out.clear();
  queue_.clear();
  queue_.push_back(v);
  stamp_[v] = epoch_;
  depth_[v] = 0;
  for (size_t head = 0; head < queue_.size(); ++head) {
    VertexId u = queue_[head];
    out.push_back(u);
    if (depth_[u] == r) continue;
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it) {
      if (stamp_[*it] != epoch_) {
        stamp_[*it] = epoch_;
        depth_[*it] = depth_[u] + 1;
        queue_.push_back(*it);
      }
    }
  }
  std::sort(out.begin(), out.end());
}

std::vector<VertexId> neighborhood_r(const Graph& g, VertexId v, int32_t r) {
  BallScratch scratch;
  std::vector<VertexId> out;
  scratch.collect(g, v, r, out);
  return out;
}

bool is_distance_r_independent(const Graph& g, const Configuration& config,
                               int32_t r) {
  std::vector<int32_t> occupancy(g.vertex_count(), 0);
  for (VertexId v : config) ++occupancy[v];
  BallScratch scratch;
  std::vector<VertexId> ball;
  for (VertexId v : config) {
    scratch.collect(g, v, r, ball);
    int32_t within = 0;
    for (VertexId u : ball) within += occupancy[u];
    // the ball always counts the agent itself; anyone else within r is a pair
    if (within > 1) return false;
  }
  return true;
}

VertexId next_step_r(const Graph& g, VertexId s, const DistanceTable& target_dist,
                     int32_t r) {
  VertexId cur = s;
  for (int32_t hop = 0; hop < r; ++hop) {
    VertexId best = cur;
    int32_t best_d = target_dist[cur];
    auto [b, e] = g.neighbors(cur);
    for (auto it = b; it != e; ++it) {
      int32_t d = target_dist[*it];
      if (d < best_d || (d == best_d && *it < best)) {
        best = *it;
        best_d = d;
      }
    }
    cur = best;
  }
  return cur;
}

bool check_transition(const Graph& g, const Configuration& q_from,
                      const Configuration& q_to) {
  if (q_from.size() != q_to.size()) return false;
  for (size_t i = 0; i < q_from.size(); ++i) {
    if (q_to[i] != q_from[i] && !g.has_edge(q_from[i], q_to[i])) return false;
  }
  return true;
}

GridMap grid_from_mask(int32_t height, int32_t width,
                       const std::vector<uint8_t>& passable) {
  if (static_cast<int64_t>(passable.size()) != int64_t{height} * width)
    throw std::invalid_argument("mask size mismatch");
  GridMap m;
  m.height = height;
  m.width = width;
  m.cell_vertex.assign(passable.size(), kNoVertex);
  std::vector<GridPos> coords;
  int32_t next = 0;
  for (int32_t row = 0; row < height; ++row) {
    for (int32_t col = 0; col < width; ++col) {
      size_t idx = static_cast<size_t>(row) * width + col;
      if (!passable[idx]) continue;
      m.cell_vertex[idx] = next++;
      coords.push_back({static_cast<int16_t>(row), static_cast<int16_t>(col)});
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int32_t row = 0; row < height; ++row) {
    for (int32_t col = 0; col < width; ++col) {
      VertexId v = m.vertex_at(row, col);
      if (v == kNoVertex) continue;
      if (col + 1 < width && m.vertex_at(row, col + 1) != kNoVertex)
        edges.emplace_back(v, m.vertex_at(row, col + 1));
      if (row + 1 < height && m.vertex_at(row + 1, col) != kNoVertex)
        edges.emplace_back(v, m.vertex_at(row + 1, col));
    }
  }
  m.graph = Graph::from_edges(next, edges);
  m.graph.set_coords(std::move(coords));
  return m;
}

GridMap parse_movingai(const std::string& text) {
  std::istringstream in(text);
  std::string line, key;
  int32_t height = -1, width = -1;
  bool saw_map = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    ls >> key;
    if (key == "type") {
      continue;  // "octile" expected; value is informational
    } else if (key == "height") {
      ls >> height;
    } else if (key == "width") {
      ls >> width;
    } else if (key == "map") {
      saw_map = true;
      break;
    }
  }
  if (!saw_map || height <= 0 || width <= 0)
    throw std::runtime_error("map header missing height/width/map lines");

  std::vector<uint8_t> passable(static_cast<size_t>(height) * width, 0);
  for (int32_t row = 0; row < height; ++row) {
    if (!std::getline(in, line)) throw std::runtime_error("map rows truncated");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int32_t>(line.size()) < width)
      throw std::runtime_error("map row shorter than width");
    for (int32_t col = 0; col < width; ++col) {
      char c = line[col];
      if (c == '.' || c == 'G') {
        passable[static_cast<size_t>(row) * width + col] = 1;
      } else if (c == '@' || c == 'O' || c == 'T' || c == 'W') {
        // blocked
      } else {
        throw std::runtime_error(std::string("unknown map character '") + c + "'");
      }
    }
  }
  GridMap m = grid_from_mask(height, width, passable);
  if (m.graph.vertex_count() == 0) throw std::runtime_error("map has no passable cells");
  if (!m.graph.is_connected())
    throw std::runtime_error("map passable area is disconnected; planners require a connected graph");
  return m;
}

GridMap load_movingai(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open map file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_movingai(buf.str());
}

}  // namespace iumapf
