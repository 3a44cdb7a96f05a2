#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "avocado/batch.hpp"
#include "avocado/simulator.hpp"

namespace avocado::io {

/// One opinion gain varied over a list of values on the head-on study.
struct ParamSweep {
  std::string param;  // a, b, c, d, delta, kappa, epsilon or sigma
  std::vector<double> values;
  bool complement_c = false;  // set c = 1 - a alongside a
};

struct SweepConfig {
  nlohmann::json base;  // run configuration every cell starts from
  std::vector<std::string> variants;
  std::vector<std::string> families;
  std::vector<int> n_agents;
  std::vector<double> proportions;
  int runs = 1;
  std::vector<ParamSweep> param_sweeps;
};

struct SweepRow {
  std::string kind;  // "grid" or "param"
  std::string variant;
  std::string family;
  int n_agents = 0;
  double proportion = 0.0;
  std::string param;
  std::optional<double> value;
  int runs = 0;
  std::optional<BatchResult> result;
  std::string error;  // set when the cell could not run
};

struct ParamTrace {
  std::string param;
  double value = 0.0;
  std::vector<OpinionTraceRecord> records;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<ParamTrace> traces;
};

inline constexpr const char* kSweepHeader =
    "kind,variant,family,n_agents,proportion,param,value,runs,success_rate,mean_time_to_goal_s,"
    "collisions,mean_plan_ms,status,error";
inline constexpr const char* kSweepTraceHeader = "param,value,tick,robot_id,neighbor_id,o,A,e,tau,alpha";

/// Throws ConfigError.
SweepConfig sweep_from_json(const nlohmann::json& doc);

/// Grid cells in variant, family, N, P order, then the parameter sweeps. A
/// failing cell is recorded in its row and the sweep continues.
SweepResult run_sweep(const SweepConfig& config, int threads = 1);

std::string sweep_csv(const SweepResult& result, bool with_timing);
std::string sweep_traces_csv(const SweepResult& result);

}  // namespace avocado::io
