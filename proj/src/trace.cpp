#include "iumapf/trace.hpp"

#include <sstream>

namespace iumapf {

namespace {
constexpr int kCell = 16;
constexpr int kMargin = 8;
}  // namespace

std::string render_plan_svg(const GridMap& map, const Plan& plan, int32_t r) {
  const int frame_w = map.width * kCell;
  const int frame_h = map.height * kCell;
  const int total_w = frame_w + 2 * kMargin;
  const int total_h =
      static_cast<int>(plan.steps.size()) * (frame_h + kMargin) + kMargin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w
      << "\" height=\"" << total_h << "\">\n";
  for (size_t step = 0; step < plan.steps.size(); ++step) {
    const int oy = kMargin + static_cast<int>(step) * (frame_h + kMargin);
    out << " <g class=\"frame\" data-step=\"" << step << "\" transform=\"translate("
        << kMargin << ',' << oy << ")\">\n";
    out << "  <rect width=\"" << frame_w << "\" height=\"" << frame_h
        << "\" fill=\"white\" stroke=\"black\"/>\n";
    for (int32_t row = 0; row < map.height; ++row) {
      for (int32_t col = 0; col < map.width; ++col) {
        if (map.vertex_at(row, col) != kNoVertex) continue;
        out << "  <rect x=\"" << col * kCell << "\" y=\"" << row * kCell
            << "\" width=\"" << kCell << "\" height=\"" << kCell
            << "\" fill=\"#444\"/>\n";
      }
    }
    for (VertexId v : plan.steps[step]) {
      auto pos = map.graph.coord(v);
      const double cx = (pos.col + 0.5) * kCell;
      const double cy = (pos.row + 0.5) * kCell;
      out << "  <circle class=\"halo\" data-r=\"" << r << "\" cx=\"" << cx
          << "\" cy=\"" << cy << "\" r=\"" << (r + 0.5) * kCell
          << "\" fill=\"#4a90d9\" fill-opacity=\"0.15\" stroke=\"#4a90d9\" "
             "stroke-dasharray=\"3,2\"/>\n";
      out << "  <circle class=\"agent\" cx=\"" << cx << "\" cy=\"" << cy << "\" r=\""
          << 0.35 * kCell << "\" fill=\"#d94a4a\"/>\n";
    }
    out << " </g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace iumapf
