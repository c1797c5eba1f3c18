#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace iumapf {

using VertexId = int32_t;
inline constexpr VertexId kNoVertex = -1;

// One vertex per agent, indexed by agent id.
using Configuration = std::vector<VertexId>;

struct GridPos {
  int16_t row;
  int16_t col;
};

// FNV-1a over vertex ids; keyed configurations are sorted multisets.
struct ConfigHash {
  size_t operator()(const Configuration& c) const {
    uint64_t h = 1469598103934665603ULL;
    for (VertexId v : c) {
      h ^= static_cast<uint64_t>(v) + 0x9e3779b9;
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

// Simple undirected graph in CSR form. Neighbor lists are sorted ascending,
// which anchors every argmin tie-break in the planners.
class Graph {
 public:
  Graph() = default;

  // edges: undirected pairs over [0, vertex_count). Throws std::invalid_argument
  // on self-loops or out-of-range endpoints; duplicate edges are merged.
  static Graph from_edges(int32_t vertex_count,
                          const std::vector<std::pair<VertexId, VertexId>>& edges);

  int32_t vertex_count() const { return vertex_count_; }
  int64_t edge_count() const { return static_cast<int64_t>(adj_.size()) / 2; }

  std::pair<const VertexId*, const VertexId*> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  int32_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(VertexId u, VertexId v) const;

  bool is_connected() const;

  bool has_coords() const { return !coords_.empty(); }
  GridPos coord(VertexId v) const { return coords_[v]; }
  void set_coords(std::vector<GridPos> coords);

 private:
  int32_t vertex_count_ = 0;
  std::vector<int32_t> offsets_ = {0};
  std::vector<VertexId> adj_;
  std::vector<GridPos> coords_;
};

// Hop counts from a single source; kUnreachable marks vertices in other
// components (cannot occur on the connected graphs the planners accept).
struct DistanceTable {
  static constexpr int32_t kUnreachable = std::numeric_limits<int32_t>::max();
  VertexId source = kNoVertex;
  std::vector<int32_t> dist;

  int32_t operator[](VertexId v) const { return dist[v]; }
};

DistanceTable bfs_distances(const Graph& g, VertexId source);

// { u : dist(u, v) <= r }, sorted ascending. r = 0 yields {v}.
std::vector<VertexId> neighborhood_r(const Graph& g, VertexId v, int32_t r);

// Reusable scratch for radius-r ball enumeration; avoids O(V) work per query.
class BallScratch {
 public:
  void collect(const Graph& g, VertexId v, int32_t r, std::vector<VertexId>& out);

 private:
  std::vector<uint32_t> stamp_;
  std::vector<int32_t> depth_;
  std::vector<VertexId> queue_;
  uint32_t epoch_ = 0;
};

// True iff every agent pair sits at pairwise distance strictly greater than r.
// r = 0 reduces to "all positions distinct".
bool is_distance_r_independent(const Graph& g, const Configuration& config, int32_t r);

// r greedy hops toward the target: each hop replaces the current vertex by the
// closed-neighborhood vertex minimizing dist to the target, smallest id on ties.
// target_dist must be rooted at the target. r = 0 returns s.
VertexId next_step_r(const Graph& g, VertexId s, const DistanceTable& target_dist,
                     int32_t r);

// True iff q_to[i] lies in the closed neighborhood of q_from[i] for every agent.
bool check_transition(const Graph& g, const Configuration& q_from,
                      const Configuration& q_to);

// MovingAI .map grid: '.' and 'G' passable, '@','O','T','W' blocked. Vertices
// are passable cells, 4-connected, numbered row-major.
struct GridMap {
  Graph graph;
  int32_t height = 0;
  int32_t width = 0;
  std::vector<VertexId> cell_vertex;  // height*width entries, -1 where blocked

  VertexId vertex_at(int32_t row, int32_t col) const {
    return cell_vertex[static_cast<size_t>(row) * width + col];
  }
};

GridMap load_movingai(const std::string& path);
GridMap parse_movingai(const std::string& text);  // throws std::runtime_error

// Grid built from a boolean passability mask, same numbering rules as the
// .map parser but without the connectivity requirement (test utility).
GridMap grid_from_mask(int32_t height, int32_t width, const std::vector<uint8_t>& passable);

}  // namespace iumapf
