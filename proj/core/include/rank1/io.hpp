#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rank1/correl.hpp"
#include "rank1/schedule.hpp"
#include "rank1/tower.hpp"
#include "rank1/verify.hpp"

namespace rank1 {

using Json = nlohmann::ordered_json;

/// {"h1", "stages": [{"r", "spacers"}], "meta": {"family", "params"}, "heights"}.
/// Big integers are decimal strings; "heights" is informational and checked on
/// read when present.
Json to_json(const ConstructionSchedule& schedule);
ConstructionSchedule schedule_from_json(const Json& j);
ConstructionSchedule read_schedule(const std::string& path);

Json to_json(const LevelSet& set);
LevelSet level_set_from_json(const ConstructionSchedule& schedule, const Json& j);

Json to_json(const VerificationReport& report);
Json to_json(const CorrelationResult& result);
Json to_json(const JoiningCoefficients& co);
Json to_json(const AveragingEstimate& est);

/// Named sets: "E_j", "U_j", "T^iE_j" (also "T^i E_j"), an explicit list
/// "j:i1,i2,..." and "@path" for a LevelSet JSON file.
LevelSet parse_level_set(const ConstructionSchedule& schedule, std::string_view text);

/// CSV for correlation series: m,lower,upper,stage_used[,bound].
std::string csv_header(bool with_bound);
std::string csv_row(const CorrelationResult& r);
std::string csv_row(const CorrelationResult& r, const std::string& bound);

}  // namespace rank1
