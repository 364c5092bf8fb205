#pragma once

// JSON and CSV renderings of results. The JSON field names are part of the
// command-line contract and documented in the README.

#include <json.hpp>

#include <string>
#include <vector>

#include "hk/constants.hpp"
#include "hk/enumerate.hpp"
#include "hk/verify.hpp"

namespace hk {

nlohmann::json to_json(const AsymptoticPrediction& p);
// Inverse of to_json; throws ParseError on missing or mistyped fields.
AsymptoticPrediction prediction_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CountResult& r);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const Check& c);

// Header B,count,predicted,ratio then one line per row.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace hk
