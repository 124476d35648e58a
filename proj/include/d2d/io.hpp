#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "d2d/pattern.hpp"
#include "d2d/sim.hpp"
#include "d2d/verify.hpp"

namespace d2d::io {

using json = nlohmann::json;

// Scenario file schema (all defaults documented in README):
//   shape{m,n}, pattern{family, params{...}}, ues[{id, start:[i,j],
//   service_type}], channel{kind, p_rx, seed}, horizon, filtering{enabled,
//   service_map, interest}.
// Parse errors name the offending key path.
Scenario scenario_from_json(const json& doc);
json scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);

json report_to_json(const PropertyReport& report);
std::string report_to_text(const PropertyReport& report);

json table_to_json(const std::vector<FeatureRow>& rows);
std::string table_to_text(const std::vector<FeatureRow>& rows);

std::vector<TrajectoryPoint> build_trace(const Pattern& pattern, Resource start,
                                         Int frames);
json trace_to_json(const std::vector<TrajectoryPoint>& trace);
std::string trace_to_csv(const std::vector<TrajectoryPoint>& trace);

json partition_to_json(const Pattern& pattern);
std::string partition_to_text(const Pattern& pattern);

json result_to_json(const Scenario& scenario, const SimResult& result);

}  // namespace d2d::io
