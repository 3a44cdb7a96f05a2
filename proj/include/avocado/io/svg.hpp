#pragma once

#include <map>
#include <string>
#include <vector>

#include "avocado/simulator.hpp"

namespace avocado::io {

struct SvgStyle {
  std::size_t samples_per_agent = 40;  // disks drawn per agent, at most
  double pixels_per_meter = 80.0;
  double default_radius = 0.2;
};

struct PlotData {
  std::vector<TrajectoryRecord> trajectory;
  std::map<int, Vec2> goals;      // optional goal markers
  std::map<int, double> radii;    // per agent; default_radius otherwise
};

/// Static trajectory plot: translucent disks that grow opaque with time,
/// goal markers, and a crossed circle where an entity collided.
std::string render_svg(const PlotData& data, const SvgStyle& style = {});

}  // namespace avocado::io
