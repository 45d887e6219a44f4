#pragma once

#include "purepoint/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace purepoint {

// Machine rendering; `with_timings = false` drops the one nondeterministic
// section so byte-level comparisons are meaningful.
nlohmann::ordered_json report_to_json(const Report& report, bool with_timings = true);

// Human rendering; agrees with the JSON field-for-field.
std::string report_to_text(const Report& report);

} // namespace purepoint
