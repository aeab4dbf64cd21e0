#pragma once

#include <filesystem>

#include <json.hpp>

#include "tensormp/experiment.hpp"
#include "tensormp/model_config.hpp"

namespace tensormp {

// Enums are lowercase strings. tau is either "constant_one" or an object:
//   {"kind": "two_point", "a": 1, "b": 2, "weight": 0.5}
//   {"kind": "explicit", "values": [1, 1, 4]}

nlohmann::json to_json(const TauSpec& tau);
TauSpec tau_from_json(const nlohmann::json& j);

/// Fields {n, k, c, model, entry_law, tau, seed, replicas}; all but n, k, c default.
nlohmann::json to_json(const ModelParams& p);
ModelParams params_from_json(const nlohmann::json& j);

/// Either an explicit "points" array of model configs or a grid:
///   {"n": [10, 20, 30], "c": [0.5], "k_schedule": {"kind": "fixed", "k": 2},
///    "model": ..., "entry_law": ..., "tau": ..., "seed": 1, "replicas": 5,
///    "mode": "convergence" | "comparison"}
/// A power schedule is {"kind": "power", "gamma": 0.5}.
SweepPlan plan_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace tensormp
