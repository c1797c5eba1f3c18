#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "iumapf/graph.hpp"
#include "iumapf/instance.hpp"

namespace iumapf {

// Vertex set partitioned into planets and black holes. Provenance tracks the
// original vertex ids each current vertex absorbed.
struct GalacticGraph {
  Graph graph;
  std::vector<uint8_t> is_black_hole;
  std::vector<std::vector<VertexId>> provenance;

  int32_t black_hole_count() const;
};

struct GalacticInstance {
  GalacticGraph gg;
  Configuration start;
  Configuration target;
  int32_t radius = 0;

  int32_t agent_count() const { return static_cast<int32_t>(start.size()); }
};

GalacticInstance lift_to_galactic(const Instance& instance);

struct LayerLabels {
  static constexpr int32_t kUnreachable = std::numeric_limits<int32_t>::max();
  // per vertex: min distance inside G[P] to S u T; -1 on black holes
  std::vector<int32_t> layer;
};

LayerLabels compute_layers(const GalacticGraph& gg, const Configuration& start,
                           const Configuration& target);

// Rule 2 fires on components holding a planet at layer >= this threshold.
int32_t contraction_threshold(int32_t n, int32_t r);  // (r+1)(n+2) - 1

// Contract every adjacent pair (transitively: every connected group) of black
// holes into one. Returns whether anything changed.
bool rule_adjacent_blackholes(GalacticInstance& gi);

// Contract each component of G_p (planets not adjacent to S u T) that holds a
// planet at layer >= contraction_threshold(n, r) into a fresh black hole
// adjacent to the component's outside neighborhood.
bool rule_component_contract(GalacticInstance& gi);

// Lift, then alternate rule sweeps until neither fires. Feasibility-equivalent
// to the input instance.
GalacticInstance kernelize(const Instance& instance);

// Self-contained text format: "p V E", E "e u v" lines, "b id" per black
// hole, then "r", "n", "s id" and "t id" lines.
std::string format_galactic_instance(const GalacticInstance& gi);
GalacticInstance parse_galactic_instance(const std::string& text);
void write_galactic_instance(const std::string& path, const GalacticInstance& gi);
GalacticInstance read_galactic_instance(const std::string& path);

}  // namespace iumapf
