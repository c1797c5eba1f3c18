#pragma once

#include <string>

#include "iumapf/graph.hpp"
#include "iumapf/instance.hpp"

namespace iumapf {

// Static debug rendering: one <g class="frame"> per plan step, agents as
// filled circles with a radius-r halo circle carrying data-r="<r>".
std::string render_plan_svg(const GridMap& map, const Plan& plan, int32_t r);

}  // namespace iumapf
