#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hawkes_queue/monte_carlo.hpp"
#include "hawkes_queue/validate.hpp"

namespace hawkes_queue {

nlohmann::json to_json(const McEstimate& e);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const ConventionVerdict& v);
nlohmann::json to_json(const SuiteResult& s);

/// One {"t","estimate","std_error","n_paths"} block of arrays per quantity.
nlohmann::json mc_moments_json(const std::vector<McMoments>& rows);

/// Markdown record of each verdict, its evidence and the shipped default.
std::string conventions_markdown(const std::vector<ConventionVerdict>& verdicts);

}  // namespace hawkes_queue
