#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "segrescope/states.hpp"

namespace segrescope {

// Serialized field names are part of the wire format and must not change:
//   pure state    {"dims":[...],"re":[...],"im":[...]}
//   density       {"dims":[...],"matrix_re":[[...]],"matrix_im":[[...]]}
//   ensemble      {"members":[{"p":...,"state":{...}},...]}
// Numbers are IEEE-754 doubles; loading the saved text reproduces the
// original values bit-exactly.

nlohmann::json to_json(const PureState& state);
nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const Ensemble& ensemble);

PureState pure_state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);
Ensemble ensemble_from_json(const nlohmann::json& j);

// Text parsers; throw FormatError with a location on malformed input.
PureState load_pure_state(const std::string& text);
DensityMatrix load_density(const std::string& text);
Ensemble load_ensemble(const std::string& text);

// Detects the payload kind by its fields ("re" vs "matrix_re").
using StateVariant = std::variant<PureState, DensityMatrix>;
StateVariant load_state(const std::string& text);

std::string save_pure_state(const PureState& state);
std::string save_density(const DensityMatrix& rho);
std::string save_ensemble(const Ensemble& ensemble);

// File counterparts of the above.
PureState load_pure_state_file(const std::string& path);
DensityMatrix load_density_file(const std::string& path);
StateVariant load_state_file(const std::string& path);
void save_pure_state_file(const PureState& state, const std::string& path);
void save_density_file(const DensityMatrix& rho, const std::string& path);

std::string read_text_file(const std::string& path);

} // namespace segrescope
