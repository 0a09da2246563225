#pragma once

#include <json.hpp>

#include "segrescope/codes.hpp"
#include "segrescope/roof.hpp"
#include "segrescope/secant.hpp"
#include "segrescope/segre.hpp"

namespace segrescope {

// {"dims":[...],"kind":"SEGRE","items":[{"K":[...],"L":[...],"S":[...]},...]}
nlohmann::json to_json(const QuadricSet& set);

// {"dims":...,"k":...,"ambient_dim":...,"expected_dim":...,"computed_dim":...,
//  "defect":...,"fills":...,"trials":...,"seed":...}
nlohmann::json to_json(const SecantReport& report);

nlohmann::json to_json(const RankEstimate& estimate);

// Roof result with the best ensemble inlined in the shared ensemble format
// and the per-restart history included.
nlohmann::json to_json(const RoofResult& result);

nlohmann::json to_json(const CodeParams& params);

} // namespace segrescope
