#include "avocado/io/sweep.hpp"

#include "avocado/io/config.hpp"
#include "avocado/io/errors.hpp"
#include "avocado/io/outputs.hpp"

namespace avocado::io {
namespace {

using nlohmann::json;

template <class T>
std::vector<T> read_list(const json& obj, const char* key, const std::string& where,
                         std::vector<T> fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_array() || it->empty()) throw ConfigError(where + "." + key, "expected a non-empty array");
  std::vector<T> out;
  for (const auto& v : *it) {
    try {
      out.push_back(v.get<T>());
    } catch (const json::exception&) {
      throw ConfigError(where + "." + key, "unexpected element " + v.dump());
    }
  }
  return out;
}

double* param_slot(OpinionParams& p, const std::string& name) {
  if (name == "a") return &p.a;
  if (name == "b") return &p.b;
  if (name == "c") return &p.c;
  if (name == "d") return &p.d;
  if (name == "delta") return &p.delta;
  if (name == "kappa") return &p.kappa;
  if (name == "epsilon") return &p.epsilon;
  if (name == "sigma") return &p.sigma;
  return nullptr;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

SweepConfig sweep_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("", "expected an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "schema_version" && k != "base" && k != "grid" && k != "param_sweeps") {
      throw ConfigError(k, "unknown key");
    }
  }
  auto version = doc.find("schema_version");
  if (version == doc.end()) throw ConfigError("schema_version", "missing required key");
  if (!version->is_number_integer() || version->get<long long>() != kSchemaVersion) {
    throw ConfigError("schema_version", "unsupported version " + version->dump());
  }

  SweepConfig cfg;
  cfg.base = doc.value("base", json::object());
  if (!cfg.base.is_object()) throw ConfigError("base", "expected an object");
  cfg.base["schema_version"] = kSchemaVersion;
  try {
    spec_from_json(cfg.base);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    if (!e.key_path().empty()) msg.erase(0, e.key_path().size() + 2);
    throw ConfigError(e.key_path().empty() ? "base" : "base." + e.key_path(), msg);
  }

  if (auto grid = doc.find("grid"); grid != doc.end()) {
    if (!grid->is_object()) throw ConfigError("grid", "expected an object");
    for (auto it = grid->begin(); it != grid->end(); ++it) {
      const std::string& k = it.key();
      if (k != "variant" && k != "family" && k != "N" && k != "P" && k != "M") {
        throw ConfigError("grid." + k, "unknown key");
      }
    }
    cfg.variants = read_list<std::string>(*grid, "variant", "grid",
                                          {cfg.base.value("variant", std::string("AVOCADO_1"))});
    for (const auto& v : cfg.variants) {
      if (!is_known_variant(v)) throw ConfigError("grid.variant", "unknown planner variant '" + v + "'");
    }
    cfg.families = read_list<std::string>(*grid, "family", "grid",
                                          {cfg.base.value("family", std::string("headon"))});
    for (const auto& f : cfg.families) parse_family(f, "grid.family");
    cfg.n_agents = read_list<int>(*grid, "N", "grid", {cfg.base.value("n_agents", 2)});
    cfg.proportions = read_list<double>(*grid, "P", "grid", {cfg.base.value("proportion", 1.0)});
    if (auto m = grid->find("M"); m != grid->end()) {
      if (!m->is_number_integer() || m->get<long long>() < 1) {
        throw ConfigError("grid.M", "expected an integer >= 1");
      }
      cfg.runs = m->get<int>();
    } else {
      cfg.runs = cfg.base.value("runs", 1);
    }
  }

  if (auto sweeps = doc.find("param_sweeps"); sweeps != doc.end()) {
    if (!sweeps->is_array()) throw ConfigError("param_sweeps", "expected an array");
    for (std::size_t i = 0; i < sweeps->size(); ++i) {
      const json& s = (*sweeps)[i];
      const std::string where = "param_sweeps[" + std::to_string(i) + "]";
      if (!s.is_object()) throw ConfigError(where, "expected an object");
      for (auto it = s.begin(); it != s.end(); ++it) {
        if (it.key() != "param" && it.key() != "values" && it.key() != "complement_c") {
          throw ConfigError(where + "." + it.key(), "unknown key");
        }
      }
      ParamSweep ps;
      if (!s.contains("param") || !s["param"].is_string()) {
        throw ConfigError(where + ".param", "expected a parameter name");
      }
      ps.param = s["param"].get<std::string>();
      OpinionParams probe;
      if (param_slot(probe, ps.param) == nullptr) {
        throw ConfigError(where + ".param", "unknown parameter '" + ps.param + "'");
      }
      ps.values = read_list<double>(s, "values", where, {});
      if (ps.values.empty()) throw ConfigError(where + ".values", "expected a non-empty array");
      if (auto c = s.find("complement_c"); c != s.end()) {
        if (!c->is_boolean()) throw ConfigError(where + ".complement_c", "expected true or false");
        ps.complement_c = c->get<bool>();
      }
      cfg.param_sweeps.push_back(ps);
    }
  }
  return cfg;
}

SweepResult run_sweep(const SweepConfig& config, int threads) {
  SweepResult result;
  for (const auto& variant : config.variants) {
    for (const auto& family : config.families) {
      for (int n : config.n_agents) {
        for (double p : config.proportions) {
          SweepRow row;
          row.kind = "grid";
          row.variant = variant;
          row.family = family;
          row.n_agents = n;
          row.proportion = p;
          row.runs = config.runs;
          json cell = config.base;
          cell["variant"] = variant;
          cell["family"] = family;
          cell["n_agents"] = n;
          cell["proportion"] = p;
          cell["runs"] = config.runs;
          try {
            const ScenarioSpec spec = spec_from_json(cell);
            row.result = run_batch(spec, threads);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          result.rows.push_back(std::move(row));
        }
      }
    }
  }

  for (const auto& sweep : config.param_sweeps) {
    for (double value : sweep.values) {
      SweepRow row;
      row.kind = "param";
      row.param = sweep.param;
      row.value = value;
      row.runs = 1;
      json cell = config.base;
      cell["family"] = "headon";
      cell["n_agents"] = 2;
      cell["runs"] = 1;
      row.variant = cell.value("variant", std::string("AVOCADO_1"));
      row.family = "headon";
      row.n_agents = 2;
      row.proportion = cell.value("proportion", 1.0);
      try {
        ScenarioSpec spec = spec_from_json(cell);
        *param_slot(spec.opinion, sweep.param) = value;
        if (sweep.complement_c && sweep.param == "a") spec.opinion.c = 1.0 - value;
        try {
          spec.opinion.validate();
          spec.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError("opinion." + sweep.param, e.what());
        }
        EpisodeResult first;
        row.result = run_batch(spec, threads, &first);
        result.traces.push_back({sweep.param, value, std::move(first.opinion_trace)});
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result, bool with_timing) {
  std::string out = kSweepHeader;
  out += '\n';
  for (const auto& r : result.rows) {
    out += r.kind + ',' + r.variant + ',' + r.family + ',' + std::to_string(r.n_agents) + ',' +
           format_number(r.proportion) + ',' + r.param + ',' + optional_field(r.value) + ',' +
           std::to_string(r.runs) + ',';
    if (r.result) {
      const BatchResult& b = *r.result;
      out += optional_field(b.success_rate) + ',' + optional_field(b.mean_time_to_goal) + ',' +
             std::to_string(b.collisions) + ',' +
             (with_timing && b.timing.samples > 0 ? format_number(b.timing.mean_ms) : "") + ",ok,";
    } else {
      out += ",,,,error," + csv_escape(r.error);
    }
    out += '\n';
  }
  return out;
}

std::string sweep_traces_csv(const SweepResult& result) {
  std::string out = kSweepTraceHeader;
  out += '\n';
  for (const auto& t : result.traces) {
    for (const auto& r : t.records) {
      const std::string tau = format_tau(r.tau);
      out += t.param + ',' + format_number(t.value) + ',' + std::to_string(r.tick) + ',' +
             std::to_string(r.robot_id) + ',' + std::to_string(r.neighbor_id) + ',' +
             format_number(r.o) + ',' + format_number(r.attention) + ',' + format_number(r.e) + ',' +
             tau + ',' + format_number(r.alpha) + '\n';
    }
  }
  return out;
}

}  // namespace avocado::io
