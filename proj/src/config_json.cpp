#include "tensormp/config_json.hpp"

#include <fstream>

#include "tensormp/error.hpp"

namespace tensormp {

using nlohmann::json;

namespace {

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

json to_json(const TauSpec& tau) {
  switch (tau.kind) {
    case TauKind::ConstantOne: return "constant_one";
    case TauKind::TwoPoint: return {{"kind", "two_point"}, {"a", tau.a}, {"b", tau.b}, {"weight", tau.weight}};
    case TauKind::ExplicitList: return {{"kind", "explicit"}, {"values", tau.list}};
  }
  return nullptr;
}

TauSpec tau_from_json(const json& j) {
  if (j.is_string()) {
    if (parse_tau_kind(j.get<std::string>()) != TauKind::ConstantOne)
      throw ConfigError("tau given as a string must be \"constant_one\"");
    return TauSpec::constant_one();
  }
  if (!j.is_object()) throw ConfigError("tau must be a string or an object");
  switch (parse_tau_kind(j.at("kind").get<std::string>())) {
    case TauKind::ConstantOne: return TauSpec::constant_one();
    case TauKind::TwoPoint:
      return TauSpec::two_point(j.at("a").get<double>(), j.at("b").get<double>(), field_or(j, "weight", 0.5));
    case TauKind::ExplicitList: return TauSpec::explicit_list(j.at("values").get<std::vector<double>>());
  }
  throw ConfigError("bad tau");
}

json to_json(const ModelParams& p) {
  return {{"n", p.n},
          {"k", p.k},
          {"c", p.c},
          {"model", std::string(to_string(p.model))},
          {"entry_law", std::string(to_string(p.entry_law))},
          {"tau", to_json(p.tau)},
          {"seed", p.seed},
          {"replicas", p.replicas}};
}

namespace {

ModelParams params_with_defaults(const json& j, const ModelParams& defaults) {
  ModelParams p = defaults;
  // Grid plans carry arrays under n and c; those are expanded by the caller.
  if (j.contains("n") && j.at("n").is_number()) p.n = j.at("n").get<std::uint32_t>();
  if (j.contains("k") && j.at("k").is_number()) p.k = j.at("k").get<std::uint32_t>();
  if (j.contains("c") && j.at("c").is_number()) p.c = j.at("c").get<double>();
  if (j.contains("model")) p.model = parse_model_kind(j.at("model").get<std::string>());
  if (j.contains("entry_law")) p.entry_law = parse_entry_law(j.at("entry_law").get<std::string>());
  if (j.contains("tau")) p.tau = tau_from_json(j.at("tau"));
  p.seed = field_or(j, "seed", p.seed);
  p.replicas = field_or(j, "replicas", p.replicas);
  return p;
}

}  // namespace

ModelParams params_from_json(const json& j) {
  try {
    for (const char* key : {"n", "k", "c"})
      if (!j.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
    if (!j.at("n").is_number_unsigned() || !j.at("k").is_number_unsigned())
      throw ConfigError("n and k must be non-negative integers");
    if (!j.at("c").is_number()) throw ConfigError("c must be a number");
    return params_with_defaults(j, ModelParams{});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

SweepPlan plan_from_json(const json& j) {
  try {
    const ModelParams base = params_with_defaults(j, ModelParams{});
    const auto replicas = field_or<std::uint32_t>(j, "replicas", 5);
    KSchedule schedule;
    if (j.contains("k_schedule")) {
      const auto& ks = j.at("k_schedule");
      const auto kind = ks.at("kind").get<std::string>();
      if (kind == "fixed") {
        schedule.kind = KScheduleKind::Fixed;
        schedule.k = ks.at("k").get<std::uint32_t>();
      } else if (kind == "power") {
        schedule.kind = KScheduleKind::Power;
        schedule.gamma = ks.at("gamma").get<double>();
      } else {
        throw ConfigError("unknown k_schedule kind '" + kind + "'");
      }
    } else if (j.contains("k") && j.at("k").is_number()) {
      schedule.k = j.at("k").get<std::uint32_t>();
    }

    SweepPlan plan;
    if (j.contains("points")) {
      plan.k_schedule = schedule;
      plan.replicas = replicas;
      for (const auto& pj : j.at("points")) {
        ModelParams p = params_with_defaults(pj, base);
        p.replicas = replicas;
        plan.points.push_back(p);
      }
    } else {
      auto n_values = j.at("n").is_array() ? j.at("n").get<std::vector<std::uint32_t>>()
                                           : std::vector<std::uint32_t>{j.at("n").get<std::uint32_t>()};
      auto c_values = j.at("c").is_array() ? j.at("c").get<std::vector<double>>()
                                           : std::vector<double>{j.at("c").get<double>()};
      plan = make_grid_plan(base, n_values, c_values, schedule, replicas);
    }
    const auto mode = field_or<std::string>(j, "mode", "convergence");
    if (mode == "convergence") {
      plan.mode = SweepMode::Convergence;
    } else if (mode == "comparison") {
      plan.mode = SweepMode::Comparison;
    } else {
      throw ConfigError("unknown sweep mode '" + mode + "'");
    }
    plan.output_dir = field_or<std::string>(j, "out", ".");
    return plan;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad sweep plan: ") + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace tensormp
