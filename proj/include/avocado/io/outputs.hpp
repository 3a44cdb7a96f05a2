#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "avocado/batch.hpp"
#include "avocado/simulator.hpp"

namespace avocado::io {

inline constexpr const char* kTrajectoryHeader = "tick,time,agent_id,kind,x,y,vx,vy,status";
inline constexpr const char* kOpinionHeader = "tick,robot_id,neighbor_id,o,A,e,tau,alpha";

/// Nine significant digits, shortest form ("%.9g").
std::string format_number(double value);
/// Value rounded to nine significant digits, for JSON emission.
double round_sig9(double value);
/// Seconds, "inf" when no collision is predicted and 0 when already touching.
std::string format_tau(const TimeToCollision& tau);

std::string trajectories_csv(const std::vector<TrajectoryRecord>& records);
std::string opinions_csv(const std::vector<OpinionTraceRecord>& records);

/// success_rate, mean_time_to_goal_s, collisions, per_robot, timing_ms.
/// Timing values are null when `with_timing` is false.
nlohmann::json metrics_json(const BatchResult& batch, bool with_timing);

/// Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Parses a trajectories.csv document. Throws ConfigError on malformed rows.
std::vector<TrajectoryRecord> parse_trajectories_csv(const std::string& text);

struct RunOutputs {
  const EpisodeResult* episode = nullptr;  // traces of run 0
  const BatchResult* batch = nullptr;
  bool with_timing = true;
};

/// Writes trajectories.csv, opinions.csv and metrics.json into `dir`,
/// creating it if needed.
void write_outputs(const std::filesystem::path& dir, const RunOutputs& outputs);

}  // namespace avocado::io
