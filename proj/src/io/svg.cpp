#include "avocado/io/svg.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "avocado/io/outputs.hpp"

namespace avocado::io {
namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                "#17becf", "#e377c2", "#8c564b", "#bcbd22", "#7f7f7f"};

std::string color_for(AgentKind kind, int id) {
  if (kind == AgentKind::Agent) return "#000000";
  if (kind == AgentKind::StaticDisc) return "#555555";
  return kPalette[static_cast<std::size_t>(id) % std::size(kPalette)];
}

std::string num(double v) { return format_number(v); }

}  // namespace

std::string render_svg(const PlotData& data, const SvgStyle& style) {
  std::map<int, std::vector<const TrajectoryRecord*>> per_agent;
  long last_tick = 0;
  for (const auto& r : data.trajectory) {
    per_agent[r.agent_id].push_back(&r);
    last_tick = std::max(last_tick, r.tick);
  }

  auto radius_of = [&](int id) {
    auto it = data.radii.find(id);
    return it != data.radii.end() ? it->second : style.default_radius;
  };

  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  double max_r = 0.0;
  auto grow = [&](const Vec2& p) {
    min_x = std::min(min_x, p.x);
    min_y = std::min(min_y, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& [id, recs] : per_agent) {
    max_r = std::max(max_r, radius_of(id));
    for (const auto* r : recs) grow(r->position);
  }
  for (const auto& [id, g] : data.goals) {
    if (per_agent.count(id)) grow(g);
  }
  if (per_agent.empty()) {
    min_x = min_y = -1.0;
    max_x = max_y = 1.0;
    max_r = style.default_radius;
  }
  const double margin = max_r;
  const double vx = min_x - margin;
  const double vy = -(max_y + margin);  // y grows upwards in the plot
  const double vw = (max_x - min_x) + 2.0 * margin;
  const double vh = (max_y - min_y) + 2.0 * margin;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(vw * style.pixels_per_meter) + "\" height=\"" + num(vh * style.pixels_per_meter) +
         "\" viewBox=\"" + num(vx) + " " + num(vy) + " " + num(vw) + " " + num(vh) + "\">\n";
  out += "<title>trajectories</title>\n";
  out += "<rect class=\"background\" x=\"" + num(vx) + "\" y=\"" + num(vy) + "\" width=\"" +
         num(vw) + "\" height=\"" + num(vh) + "\" fill=\"#ffffff\"/>\n";

  for (const auto& [id, recs] : per_agent) {
    const std::string color = color_for(recs.front()->kind, id);
    const double r = radius_of(id);
    const std::size_t n = recs.size();
    const std::size_t stride = std::max<std::size_t>(1, (n + style.samples_per_agent - 1) /
                                                            std::max<std::size_t>(1, style.samples_per_agent));
    std::vector<const TrajectoryRecord*> samples;
    for (std::size_t k = 0; k < n; k += stride) samples.push_back(recs[k]);
    if (samples.back() != recs.back()) samples.push_back(recs.back());

    // Keep only the latest disk at any repeated position.
    std::vector<const TrajectoryRecord*> kept;
    std::set<std::pair<double, double>> seen;
    for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
      if (seen.insert({(*it)->position.x, (*it)->position.y}).second) kept.push_back(*it);
    }
    std::reverse(kept.begin(), kept.end());

    out += "<g class=\"agent\" id=\"agent-" + std::to_string(id) + "\" fill=\"" + color + "\">\n";
    for (const auto* s : kept) {
      const double opacity =
          last_tick > 0 ? 0.15 + 0.85 * static_cast<double>(s->tick) / static_cast<double>(last_tick)
                        : 1.0;
      out += "<circle cx=\"" + num(s->position.x) + "\" cy=\"" + num(-s->position.y) + "\" r=\"" +
             num(r) + "\" fill-opacity=\"" + num(kept.size() == 1 ? 1.0 : opacity) + "\"/>\n";
    }
    out += "</g>\n";

    auto goal = data.goals.find(id);
    if (goal != data.goals.end() && recs.front()->kind != AgentKind::StaticDisc) {
      const double h = 0.5 * r;
      out += "<rect class=\"goal\" x=\"" + num(goal->second.x - h) + "\" y=\"" +
             num(-goal->second.y - h) + "\" width=\"" + num(2 * h) + "\" height=\"" + num(2 * h) +
             "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(0.2 * r) + "\"/>\n";
    }
  }

  for (const auto& [id, recs] : per_agent) {
    auto hit = std::find_if(recs.begin(), recs.end(),
                            [](const TrajectoryRecord* r) { return r->status == Status::Collided; });
    if (hit == recs.end()) continue;
    const Vec2 c = (*hit)->position;
    const double r = radius_of(id);
    const double a = r * 0.7071067811865476;
    out += "<g class=\"collision\" stroke=\"#e00000\" stroke-width=\"" + num(0.15 * r) +
           "\" fill=\"none\">";
    out += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(-c.y) + "\" r=\"" + num(r) + "\"/>";
    out += "<path d=\"M " + num(c.x - a) + " " + num(-c.y - a) + " L " + num(c.x + a) + " " +
           num(-c.y + a) + " M " + num(c.x - a) + " " + num(-c.y + a) + " L " + num(c.x + a) + " " +
           num(-c.y - a) + "\"/>";
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace avocado::io
