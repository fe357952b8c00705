#pragma once

#include <string>

#include <json.hpp>

#include "dbar/solvers.hpp"

namespace dbar {

/// JSON document for a report. Field order is fixed; the only volatile fields
/// are "runtime_seconds" and "timestamp".
nlohmann::ordered_json to_json(const SolveReport& report, const std::string& timestamp = "");

/// Current UTC time as ISO 8601, e.g. 2026-01-31T12:00:00Z.
std::string utc_timestamp();

}  // namespace dbar
