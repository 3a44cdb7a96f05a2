#include "avocado/io/outputs.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "avocado/io/errors.hpp"

namespace avocado::io {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) {
  return v ? json(round_sig9(*v)) : json(nullptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    throw ConfigError(where, "not a number: '" + s + "'");
  }
  return v;
}

AgentKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "robot") return AgentKind::Robot;
  if (s == "agent") return AgentKind::Agent;
  if (s == "static") return AgentKind::StaticDisc;
  throw ConfigError(where, "unknown kind '" + s + "'");
}

Status parse_status(const std::string& s, const std::string& where) {
  if (s == "active") return Status::Active;
  if (s == "arrived") return Status::Arrived;
  if (s == "collided") return Status::Collided;
  throw ConfigError(where, "unknown status '" + s + "'");
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string format_tau(const TimeToCollision& tau) {
  switch (tau.kind) {
    case TimeToCollision::Kind::NoCollision: return "inf";
    case TimeToCollision::Kind::AlreadyColliding: return "0";
    case TimeToCollision::Kind::Finite: break;
  }
  return format_number(tau.value);
}

double round_sig9(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

std::string trajectories_csv(const std::vector<TrajectoryRecord>& records) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.tick) + ',' + format_number(r.time) + ',' + std::to_string(r.agent_id) +
           ',' + to_string(r.kind) + ',' + format_number(r.position.x) + ',' +
           format_number(r.position.y) + ',' + format_number(r.velocity.x) + ',' +
           format_number(r.velocity.y) + ',' + to_string(r.status) + '\n';
  }
  return out;
}

std::string opinions_csv(const std::vector<OpinionTraceRecord>& records) {
  std::string out = kOpinionHeader;
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.tick) + ',' + std::to_string(r.robot_id) + ',' +
           std::to_string(r.neighbor_id) + ',' + format_number(r.o) + ',' +
           format_number(r.attention) + ',' + format_number(r.e) + ',' + format_tau(r.tau) + ',' +
           format_number(r.alpha) + '\n';
  }
  return out;
}

json metrics_json(const BatchResult& batch, bool with_timing) {
  json doc;
  doc["success_rate"] = optional_number(batch.success_rate);
  doc["mean_time_to_goal_s"] = optional_number(batch.mean_time_to_goal);
  doc["collisions"] = batch.collisions;
  json robots = json::array();
  for (std::size_t k = 0; k < batch.per_run.size(); ++k) {
    for (const auto& r : batch.per_run[k].per_robot) {
      robots.push_back({{"run", k}, {"id", r.id}, {"succ", r.succ ? 1 : 0},
                        {"t", optional_number(r.time_to_goal)}});
    }
  }
  doc["per_robot"] = robots;
  const bool have_timing = with_timing && batch.timing.samples > 0;
  auto timing_value = [&](double v) { return have_timing ? json(round_sig9(v)) : json(nullptr); };
  doc["timing_ms"] = {{"mean", timing_value(batch.timing.mean_ms)},
                      {"stddev", timing_value(batch.timing.stddev_ms)},
                      {"max", timing_value(batch.timing.max_ms)}};
  return doc;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<TrajectoryRecord> parse_trajectories_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTrajectoryHeader) {
    throw ConfigError("trajectories.csv", "unexpected header");
  }
  std::vector<TrajectoryRecord> out;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const std::string where = "trajectories.csv:" + std::to_string(row);
    const auto f = split(line, ',');
    if (f.size() != 9) throw ConfigError(where, "expected 9 fields");
    TrajectoryRecord r;
    r.tick = static_cast<long>(parse_double(f[0], where));
    r.time = parse_double(f[1], where);
    r.agent_id = static_cast<int>(parse_double(f[2], where));
    r.kind = parse_kind(f[3], where);
    r.position = {parse_double(f[4], where), parse_double(f[5], where)};
    r.velocity = {parse_double(f[6], where), parse_double(f[7], where)};
    r.status = parse_status(f[8], where);
    out.push_back(r);
  }
  return out;
}

void write_outputs(const std::filesystem::path& dir, const RunOutputs& outputs) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  static const EpisodeResult kEmpty;
  const EpisodeResult& ep = outputs.episode != nullptr ? *outputs.episode : kEmpty;
  write_text_file(dir / "trajectories.csv", trajectories_csv(ep.trajectory));
  write_text_file(dir / "opinions.csv", opinions_csv(ep.opinion_trace));
  static const BatchResult kNoRuns;
  const BatchResult& batch = outputs.batch != nullptr ? *outputs.batch : kNoRuns;
  write_text_file(dir / "metrics.json", metrics_json(batch, outputs.with_timing).dump(2) + "\n");
}

}  // namespace avocado::io
