#include "avocado/io/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "avocado/io/errors.hpp"

namespace avocado::io {
namespace {

using nlohmann::json;

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Reads keys from one JSON object, remembering which were consumed so that
// anything left over can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  std::string path(const std::string& key) const { return join(path_, key); }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ConfigError(path(key), "expected a number");
      out = v->get<double>();
    }
  }

  void integer(const std::string& key, int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ConfigError(path(key), "expected an integer");
      const auto value = v->get<long long>();
      if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max()) {
        throw ConfigError(path(key), "integer out of range");
      }
      out = static_cast<int>(value);
    }
  }

  void unsigned64(const std::string& key, std::uint64_t& out) {
    if (const json* v = find(key)) {
      if (v->is_number_unsigned()) {
        out = v->get<std::uint64_t>();
      } else if (v->is_number_integer() && v->get<long long>() >= 0) {
        out = static_cast<std::uint64_t>(v->get<long long>());
      } else {
        throw ConfigError(path(key), "expected a non-negative integer");
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) throw ConfigError(path(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  bool string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ConfigError(path(key), "expected a string");
      out = v->get<std::string>();
      return true;
    }
    return false;
  }

  void vec2(const std::string& key, Vec2& out) {
    if (const json* v = find(key)) out = to_vec2(*v, path(key));
  }

  static Vec2 to_vec2(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(where, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class Enum, std::size_t N>
Enum parse_enum(const std::string& text, const std::pair<const char*, Enum> (&table)[N],
                const std::string& where) {
  for (const auto& [name, value] : table) {
    if (text == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : table) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  throw ConfigError(where, "'" + text + "' is not one of " + allowed);
}

template <class Enum, std::size_t N>
std::string enum_name(Enum value, const std::pair<const char*, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

constexpr std::pair<const char*, Family> kFamilies[] = {
    {"headon", Family::HeadOn}, {"circle", Family::Circle},
    {"crossing", Family::Crossing}, {"custom", Family::Custom}};
constexpr std::pair<const char*, AgentKind> kKinds[] = {
    {"robot", AgentKind::Robot}, {"agent", AgentKind::Agent}, {"static", AgentKind::StaticDisc}};
constexpr std::pair<const char*, AgentKind> kCounterparts[] = {
    {"agent", AgentKind::Agent}, {"robot", AgentKind::Robot}};
constexpr std::pair<const char*, ReferenceVelocity> kReferences[] = {
    {"current", ReferenceVelocity::Current}, {"preferred", ReferenceVelocity::Preferred}};
constexpr std::pair<const char*, AttentionMode> kAttentionModes[] = {
    {"smoothing", AttentionMode::Smoothing}, {"ode", AttentionMode::Ode}};
constexpr std::pair<const char*, ProjectionMode> kProjectionModes[] = {
    {"signed", ProjectionMode::Signed}, {"unsigned", ProjectionMode::Unsigned}};

void read_opinion(ObjectReader& r, OpinionParams& p) {
  r.number("a", p.a);
  r.number("b", p.b);
  r.number("c", p.c);
  r.number("d", p.d);
  r.number("delta", p.delta);
  r.number("kappa", p.kappa);
  r.number("epsilon", p.epsilon);
  r.number("sigma", p.sigma);
  std::string text;
  if (r.string("attention_mode", text)) {
    p.attention_mode = parse_enum(text, kAttentionModes, r.path("attention_mode"));
  }
  if (r.string("projection_mode", text)) {
    p.projection_mode = parse_enum(text, kProjectionModes, r.path("projection_mode"));
  }
  r.finish();
}

// Maps a validation message "field: reason" to a key path.
ConfigError as_config_error(const std::invalid_argument& e, const std::string& prefix) {
  const std::string msg = e.what();
  const auto colon = msg.find(':');
  if (colon == std::string::npos) return ConfigError(prefix, msg);
  const std::string field = msg.substr(0, colon);
  const std::string rest = msg.substr(std::min(msg.size(), colon + 2));
  return ConfigError(join(prefix, field), rest);
}

}  // namespace

Family parse_family(const std::string& name, const std::string& key_path) {
  return parse_enum(name, kFamilies, key_path);
}

ScenarioSpec spec_from_json(const json& doc) {
  ObjectReader r(doc, "");
  const json* version = r.find("schema_version");
  if (version == nullptr) throw ConfigError("schema_version", "missing required key");
  if (!version->is_number_integer()) throw ConfigError("schema_version", "expected an integer");
  if (version->get<long long>() != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + version->dump() + " (expected " +
                                            std::to_string(kSchemaVersion) + ")");
  }

  ScenarioSpec spec;
  std::string text;
  if (r.string("family", text)) spec.family = parse_family(text, "family");
  r.string("variant", spec.variant);
  if (!is_known_variant(spec.variant)) {
    throw ConfigError("variant", "unknown planner variant '" + spec.variant + "'");
  }
  spec.opinion = variant_params(spec.variant);
  if (const json* op = r.find("opinion")) {
    ObjectReader opr(*op, "opinion");
    read_opinion(opr, spec.opinion);
  }

  r.integer("n_agents", spec.n_agents);
  r.number("proportion", spec.proportion);
  r.unsigned64("seed", spec.seed);
  r.integer("runs", spec.runs);
  r.number("dt_s", spec.dt);
  r.number("timeout_s", spec.timeout);
  r.number("goal_tolerance_m", spec.goal_tolerance);
  r.number("vo_horizon_s", spec.vo_horizon);
  r.number("perception_radius_m", spec.perception_radius);
  r.number("agent_radius_m", spec.agent_radius);
  r.number("robot_max_speed_mps", spec.robot_max_speed);
  r.number("agent_max_speed_mps", spec.agent_max_speed);
  if (r.string("headon_counterpart", text)) {
    spec.headon_counterpart = parse_enum(text, kCounterparts, "headon_counterpart");
  }
  r.number("headon_half_distance_m", spec.headon_half_distance);
  if (r.string("reference_velocity", text)) {
    spec.reference = parse_enum(text, kReferences, "reference_velocity");
  }
  r.boolean("orca_noise", spec.orca_noise);

  if (const json* obs = r.find("obstacles")) {
    if (!obs->is_array()) throw ConfigError("obstacles", "expected an array");
    for (std::size_t i = 0; i < obs->size(); ++i) {
      ObjectReader o((*obs)[i], "obstacles[" + std::to_string(i) + "]");
      DiscObstacle disc;
      if (!o.has("center_m")) throw ConfigError(o.path("center_m"), "missing required key");
      o.vec2("center_m", disc.center);
      o.number("radius_m", disc.radius);
      o.finish();
      spec.obstacles.push_back(disc);
    }
  }
  if (const json* ents = r.find("agents")) {
    if (!ents->is_array()) throw ConfigError("agents", "expected an array");
    for (std::size_t i = 0; i < ents->size(); ++i) {
      ObjectReader a((*ents)[i], "agents[" + std::to_string(i) + "]");
      CustomEntity e;
      if (a.string("kind", text)) e.kind = parse_enum(text, kKinds, a.path("kind"));
      if (!a.has("position_m")) throw ConfigError(a.path("position_m"), "missing required key");
      a.vec2("position_m", e.position);
      e.goal = e.position;
      a.vec2("goal_m", e.goal);
      if (a.has("radius_m")) {
        double v = 0.0;
        a.number("radius_m", v);
        e.radius = v;
      }
      if (a.has("max_speed_mps")) {
        double v = 0.0;
        a.number("max_speed_mps", v);
        e.max_speed = v;
      }
      a.finish();
      spec.entities.push_back(e);
    }
  }
  r.finish();

  spec.opinion.dt = spec.dt;
  if (spec.family == Family::Custom) {
    if (spec.entities.empty() && spec.obstacles.empty()) {
      throw ConfigError("agents", "custom scenarios need at least one entry");
    }
    spec.n_agents = static_cast<int>(spec.entities.size());
  } else if (!spec.entities.empty()) {
    throw ConfigError("agents", "only allowed with family \"custom\"");
  }

  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw as_config_error(e, "");
  }
  try {
    spec.opinion.validate();
  } catch (const std::invalid_argument& e) {
    throw as_config_error(e, "opinion");
  }
  return spec;
}

json spec_to_json(const ScenarioSpec& spec) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["family"] = enum_name(spec.family, kFamilies);
  doc["variant"] = spec.variant;
  doc["n_agents"] = spec.n_agents;
  doc["proportion"] = spec.proportion;
  doc["seed"] = spec.seed;
  doc["runs"] = spec.runs;
  doc["dt_s"] = spec.dt;
  doc["timeout_s"] = spec.timeout;
  doc["goal_tolerance_m"] = spec.goal_tolerance;
  doc["vo_horizon_s"] = spec.vo_horizon;
  doc["perception_radius_m"] = spec.perception_radius;
  doc["agent_radius_m"] = spec.agent_radius;
  doc["robot_max_speed_mps"] = spec.robot_max_speed;
  doc["agent_max_speed_mps"] = spec.agent_max_speed;
  doc["headon_counterpart"] = enum_name(spec.headon_counterpart, kCounterparts);
  doc["headon_half_distance_m"] = spec.headon_half_distance;
  doc["reference_velocity"] = enum_name(spec.reference, kReferences);
  doc["orca_noise"] = spec.orca_noise;

  const OpinionParams& p = spec.opinion;
  doc["opinion"] = {{"a", p.a},
                    {"b", p.b},
                    {"c", p.c},
                    {"d", p.d},
                    {"delta", p.delta},
                    {"kappa", p.kappa},
                    {"epsilon", p.epsilon},
                    {"sigma", p.sigma},
                    {"attention_mode", enum_name(p.attention_mode, kAttentionModes)},
                    {"projection_mode", enum_name(p.projection_mode, kProjectionModes)}};

  json obstacles = json::array();
  for (const auto& o : spec.obstacles) {
    obstacles.push_back({{"center_m", {o.center.x, o.center.y}}, {"radius_m", o.radius}});
  }
  doc["obstacles"] = obstacles;
  if (spec.family == Family::Custom) {
    json agents = json::array();
    for (const auto& e : spec.entities) {
      json a = {{"kind", enum_name(e.kind, kKinds)},
                {"position_m", {e.position.x, e.position.y}},
                {"goal_m", {e.goal.x, e.goal.y}}};
      if (e.radius) a["radius_m"] = *e.radius;
      if (e.max_speed) a["max_speed_mps"] = *e.max_speed;
      agents.push_back(a);
    }
    doc["agents"] = agents;
  }
  return doc;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("", path.string() + ": malformed JSON: " + e.what());
  }
}

ScenarioSpec load_config(const std::filesystem::path& path) {
  return spec_from_json(read_json_file(path));
}

}  // namespace avocado::io
