#pragma once

#include <string>

#include <json.hpp>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

/// Parses the parameter document. Every key is required, unknown keys are
/// rejected, and errors name the offending field. For "model": "msd" the
/// constant arrival rate is read from lambda_star.
Model model_from_json(const nlohmann::json& doc);

nlohmann::json model_to_json(const Model& model);

/// Accepts inline JSON (first non-blank character '{') or a file path.
Model load_model(const std::string& text_or_path);

}  // namespace hawkes_queue
