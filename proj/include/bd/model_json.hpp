#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "bd/model.hpp"

namespace bd {

// Model spec shape:
//   {"family": "constant" | "power_law" | "metastable" | "tabulated",
//    "params": {...family specific...},
//    "z": positive real,
//    "i_max_hint": optional int (default 1024)}
// Tabulated params: {"a": [a_1, a_2, ...], "b": [b_2, b_3, ...],
//                    "tail": "hold_last_ratio" | "error"}.
// Throws ConfigError on shape violations; model validation errors propagate.
RateModel model_from_json(const nlohmann::json& spec);

nlohmann::json model_to_json(const RateModel& model);

}  // namespace bd
