#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "olsen/graycode.hpp"
#include "olsen/measure.hpp"
#include "olsen/schedule.hpp"

namespace olsen {

// {"kind": "factorial"} or {"kind": "explicit", "values": [1, 2, 6, 24]}
nlohmann::json schedule_to_json(const EpochSchedule& schedule);
EpochSchedule schedule_from_json(const nlohmann::json& j);

// {"c1": 4, "c2": 4, "probs_a": [...], "probs_b": [...], "schedule": {...}}
nlohmann::json measure_to_json(const MeasureSpec& spec);
MeasureSpec measure_from_json(const nlohmann::json& j);

std::string code_to_string(CodeKind code);
CodeKind code_from_string(std::string_view name);

}  // namespace olsen
