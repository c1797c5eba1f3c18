#include "iumapf/kernel.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace iumapf {

int32_t GalacticGraph::black_hole_count() const {
  int32_t c = 0;
  for (uint8_t b : is_black_hole) c += b;
  return c;
}

GalacticInstance lift_to_galactic(const Instance& instance) {
  GalacticInstance gi;
  gi.gg.graph = instance.graph;
  gi.gg.is_black_hole.assign(instance.graph.vertex_count(), 0);
  gi.gg.provenance.resize(instance.graph.vertex_count());
  for (VertexId v = 0; v < instance.graph.vertex_count(); ++v)
    gi.gg.provenance[v] = {v};
  gi.start = instance.start;
  gi.target = instance.target;
  gi.radius = instance.radius;
  return gi;
}

LayerLabels compute_layers(const GalacticGraph& gg, const Configuration& start,
                           const Configuration& target) {
  const int32_t v_count = gg.graph.vertex_count();
  LayerLabels labels;
  labels.layer.assign(v_count, LayerLabels::kUnreachable);
  std::vector<VertexId> queue;
  for (VertexId v : start) {
    if (labels.layer[v] != 0) {
      labels.layer[v] = 0;
      queue.push_back(v);
    }
  }
  for (VertexId v : target) {
    if (labels.layer[v] != 0) {
      labels.layer[v] = 0;
      queue.push_back(v);
    }
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    auto [b, e] = gg.graph.neighbors(u);
    for (auto it = b; it != e; ++it) {
      if (gg.is_black_hole[*it] || labels.layer[*it] != LayerLabels::kUnreachable)
        continue;
      labels.layer[*it] = labels.layer[u] + 1;
      queue.push_back(*it);
    }
  }
  for (VertexId v = 0; v < v_count; ++v)
    if (gg.is_black_hole[v]) labels.layer[v] = -1;
  return labels;
}

int32_t contraction_threshold(int32_t n, int32_t r) { return (r + 1) * (n + 2) - 1; }

namespace {

// Merge vertices sharing a group representative; merged groups become black
// holes. Surviving vertices are renumbered in ascending old-id order of their
// representatives. S and T are remapped in place.
void merge_groups(GalacticInstance& gi, const std::vector<int32_t>& rep,
                  const std::vector<uint8_t>& rep_becomes_hole) {
  const auto& g = gi.gg.graph;
  const int32_t old_count = g.vertex_count();
  std::vector<int32_t> new_id(old_count, -1);
  int32_t next = 0;
  for (VertexId v = 0; v < old_count; ++v) {
    if (rep[v] == v) new_id[v] = next++;
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < old_count; ++u) {
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it) {
      if (u >= *it) continue;
      VertexId ru = new_id[rep[u]], rv = new_id[rep[*it]];
      if (ru == rv) continue;  // edge inside a merged group
      edges.emplace_back(ru, rv);
    }
  }
  GalacticGraph next_gg;
  next_gg.graph = Graph::from_edges(next, edges);
  next_gg.is_black_hole.assign(next, 0);
  next_gg.provenance.resize(next);
  for (VertexId v = 0; v < old_count; ++v) {
    VertexId nv = new_id[rep[v]];
    auto& prov = next_gg.provenance[nv];
    prov.insert(prov.end(), gi.gg.provenance[v].begin(), gi.gg.provenance[v].end());
    if (gi.gg.is_black_hole[v] || rep_becomes_hole[rep[v]])
      next_gg.is_black_hole[nv] = 1;
  }
  for (auto& prov : next_gg.provenance) std::sort(prov.begin(), prov.end());
  for (VertexId& v : gi.start) v = new_id[rep[v]];
  for (VertexId& v : gi.target) v = new_id[rep[v]];
  gi.gg = std::move(next_gg);
}

int32_t find_rep(std::vector<int32_t>& parent, int32_t v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

bool rule_adjacent_blackholes(GalacticInstance& gi) {
  const auto& g = gi.gg.graph;
  std::vector<int32_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  bool changed = false;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    if (!gi.gg.is_black_hole[u]) continue;
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it) {
      if (*it <= u || !gi.gg.is_black_hole[*it]) continue;
      int32_t ru = find_rep(parent, u), rv = find_rep(parent, *it);
      if (ru != rv) {
        parent[std::max(ru, rv)] = std::min(ru, rv);
        changed = true;
      }
    }
  }
  if (!changed) return false;
  std::vector<int32_t> rep(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) rep[v] = find_rep(parent, v);
  std::vector<uint8_t> rep_hole(g.vertex_count(), 0);  // merged parts stay holes
  merge_groups(gi, rep, rep_hole);
  return true;
}

bool rule_component_contract(GalacticInstance& gi) {
  const auto& g = gi.gg.graph;
  const int32_t v_count = g.vertex_count();
  const int32_t threshold = contraction_threshold(gi.agent_count(), gi.radius);
  LayerLabels labels = compute_layers(gi.gg, gi.start, gi.target);

  // V_p: planets not in the closed neighborhood of S u T
  std::vector<uint8_t> excluded(v_count, 0);
  auto exclude_around = [&](VertexId v) {
    excluded[v] = 1;
    auto [b, e] = g.neighbors(v);
    for (auto it = b; it != e; ++it) excluded[*it] = 1;
  };
  for (VertexId v : gi.start) exclude_around(v);
  for (VertexId v : gi.target) exclude_around(v);

  std::vector<int32_t> component(v_count, -1);
  std::vector<int32_t> rep(v_count);
  std::iota(rep.begin(), rep.end(), 0);
  std::vector<uint8_t> rep_hole(v_count, 0);
  bool changed = false;
  std::vector<VertexId> stack, members;
  for (VertexId s = 0; s < v_count; ++s) {
    if (component[s] != -1 || gi.gg.is_black_hole[s] || excluded[s]) continue;
    members.clear();
    stack.assign(1, s);
    component[s] = s;
    bool deep = false;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      members.push_back(u);
      if (labels.layer[u] >= threshold) deep = true;  // kUnreachable counts
      auto [b, e] = g.neighbors(u);
      for (auto it = b; it != e; ++it) {
        if (component[*it] != -1 || gi.gg.is_black_hole[*it] || excluded[*it])
          continue;
        component[*it] = s;
        stack.push_back(*it);
      }
    }
    if (!deep) continue;
    changed = true;
    for (VertexId u : members) rep[u] = s;
    rep_hole[s] = 1;
  }
  if (!changed) return false;
  merge_groups(gi, rep, rep_hole);
  return true;
}

GalacticInstance kernelize(const Instance& instance) {
  GalacticInstance gi = lift_to_galactic(instance);
  bool changed = true;
  while (changed) {
    changed = rule_component_contract(gi);
    while (rule_adjacent_blackholes(gi)) changed = true;
  }
  // valid galactic instance: no black hole may touch the endpoint sets
  for (VertexId b = 0; b < gi.gg.graph.vertex_count(); ++b) {
    if (!gi.gg.is_black_hole[b]) continue;
    for (VertexId v : gi.start)
      if (b == v || gi.gg.graph.has_edge(b, v))
        throw std::logic_error("reduction produced a black hole touching S");
    for (VertexId v : gi.target)
      if (b == v || gi.gg.graph.has_edge(b, v))
        throw std::logic_error("reduction produced a black hole touching T");
  }
  return gi;
}

std::string format_galactic_instance(const GalacticInstance& gi) {
  std::ostringstream out;
  const auto& g = gi.gg.graph;
  out << "p " << g.vertex_count() << ' ' << g.edge_count() << "\n";
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    auto [b, e] = g.neighbors(u);
    for (auto it = b; it != e; ++it)
      if (u < *it) out << "e " << u << ' ' << *it << "\n";
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (gi.gg.is_black_hole[v]) out << "b " << v << "\n";
  out << "r " << gi.radius << "\n";
  out << "n " << gi.agent_count() << "\n";
  for (VertexId v : gi.start) out << "s " << v << "\n";
  for (VertexId v : gi.target) out << "t " << v << "\n";
  return out.str();
}

GalacticInstance parse_galactic_instance(const std::string& text) {
  GalacticInstance gi;
  std::istringstream in(text);
  std::string line;
  int32_t v_count = -1;
  int64_t edge_count = -1;
  int32_t n = -1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> holes;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "p") {
      ls >> v_count >> edge_count;
    } else if (tag == "e") {
      VertexId u, v;
      ls >> u >> v;
      edges.emplace_back(u, v);
    } else if (tag == "b") {
      VertexId v;
      ls >> v;
      holes.push_back(v);
    } else if (tag == "r") {
      ls >> gi.radius;
    } else if (tag == "n") {
      ls >> n;
    } else if (tag == "s" || tag == "t") {
      VertexId v;
      ls >> v;
      (tag == "s" ? gi.start : gi.target).push_back(v);
    } else {
      throw std::runtime_error("unknown galactic instance tag: " + tag);
    }
  }
  if (v_count < 0) throw std::runtime_error("galactic instance missing p line");
  if (edge_count != static_cast<int64_t>(edges.size()))
    throw std::runtime_error("galactic instance edge count mismatch");
  gi.gg.graph = Graph::from_edges(v_count, edges);
  gi.gg.is_black_hole.assign(v_count, 0);
  for (VertexId v : holes) {
    if (v < 0 || v >= v_count) throw std::runtime_error("black hole id out of range");
    gi.gg.is_black_hole[v] = 1;
  }
  gi.gg.provenance.resize(v_count);
  for (VertexId v = 0; v < v_count; ++v) gi.gg.provenance[v] = {v};
  if (n < 0 || gi.start.size() != static_cast<size_t>(n) ||
      gi.target.size() != static_cast<size_t>(n))
    throw std::runtime_error("galactic instance agent count mismatch");
  return gi;
}

void write_galactic_instance(const std::string& path, const GalacticInstance& gi) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write galactic instance: " + path);
  f << format_galactic_instance(gi);
}

GalacticInstance read_galactic_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open galactic instance: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_galactic_instance(buf.str());
}

}  // namespace iumapf
