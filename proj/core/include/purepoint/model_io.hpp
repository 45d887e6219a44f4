#pragma once

#include "purepoint/model.hpp"
#include "purepoint/symbolic.hpp"

#include <json.hpp>

#include <string>

namespace purepoint {

// ModelFile schema (JSON): name, dim, rank, field {min_poly, root_hint,
// precision_bits}, expansion | expansion_complex, digits, realization,
// optional colours / translations. Rationals are integers or "p/q" strings;
// field elements are rationals or coefficient arrays in the power basis.
// Unknown keys are rejected.
SubstitutionModel parse_model_json(const nlohmann::json& j, int precision_bits_override = 0);
SubstitutionModel load_model_file(const std::string& path, int precision_bits_override = 0);

// Canonical emission; parse(emit(m)) is semantically identical to m.
nlohmann::ordered_json emit_model_json(const SubstitutionModel& model);

// Symbolic rule file: {name?, alphabet, rules: ["01", "00", ...]}.
SymbolicSubstitution parse_symbolic_json(const nlohmann::json& j);
SymbolicSubstitution load_symbolic_file(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

} // namespace purepoint
