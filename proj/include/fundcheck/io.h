#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fundcheck/compatibility.h"
#include "fundcheck/cycle.h"
#include "fundcheck/fundamental.h"
#include "fundcheck/fundamental_set.h"

namespace fundcheck {

// JSON documents carry "kind" and "version": 1. Matrices are row-major
// nested arrays; view indices are 1-based. Malformed documents throw
// InvalidInput.
//
//   {"kind": "cameras", "version": 1, "cameras": [P_1, ...]}
//   {"kind": "fundamental_set", "version": 1, "n": 4,
//    "matrices": [{"edge": [1, 2], "F": [[...], [...], [...]]}, ...]}
//   {"kind": "graph", "version": 1, "vertices": [1, ...], "edges": [[1, 2], ...]}
//   {"kind": "report", "version": 1, ...}
inline constexpr int kDocumentVersion = 1;

nlohmann::json CamerasToJson(const std::vector<Camera>& cameras);
std::vector<Camera> CamerasFromJson(const nlohmann::json& doc);

nlohmann::json SetToJson(const FundamentalSet& set);
FundamentalSet SetFromJson(const nlohmann::json& doc);

nlohmann::json GraphToJson(const ViewingGraph& graph);
ViewingGraph GraphFromJson(const nlohmann::json& doc);

nlohmann::json ReportToJson(const CompatReport& report);

nlohmann::json ReadJsonFile(const std::string& path);
// Pretty-printed; doubles keep 17 significant digits.
std::string DumpJson(const nlohmann::json& doc);
void WriteJsonFile(const std::string& path, const nlohmann::json& doc);

}  // namespace fundcheck
