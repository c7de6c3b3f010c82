#include "hawkes_queue/report_io.hpp"

#include <cmath>

namespace hawkes_queue {

namespace {

// JSON has no infinity; failed evaluations carry null scores.
nlohmann::json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

}  // namespace

nlohmann::json to_json(const McEstimate& e) {
  return {{"estimate", number(e.value)}, {"std_error", number(e.std_error)}, {"n_paths", e.n_paths}};
}

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json j{{"label", p.label},        {"t", p.t},
                     {"evaluated", p.evaluated}, {"analytic", number(p.analytic)},
                     {"reference", to_json(p.reference)},
                     {"score", number(p.score)}, {"pass", p.pass}};
    if (!p.evaluated) j["error"] = p.error;
    points.push_back(std::move(j));
  }
  return {{"quantity", r.quantity}, {"criterion", r.criterion}, {"pass", r.pass},
          {"points", std::move(points)}};
}

nlohmann::json to_json(const ConventionVerdict& v) {
  nlohmann::json supp = nlohmann::json::array();
  for (const auto& r : v.supplementary) supp.push_back(to_json(r));
  return {{"question", to_string(v.question)},
          {"winner", v.winner},
          {"candidates", {v.candidate_a, v.candidate_b}},
          {"n_paths", v.n_paths},
          {"note", v.note},
          {"evidence", {to_json(v.evidence_a), to_json(v.evidence_b)}},
          {"supplementary", std::move(supp)}};
}

nlohmann::json to_json(const SuiteResult& s) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : s.reports) reports.push_back(to_json(r));
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : s.verdicts) verdicts.push_back(to_json(v));
  return {{"suite", s.suite},
          {"seed", s.seed},
          {"pass", s.pass},
          {"reports", std::move(reports)},
          {"verdicts", std::move(verdicts)}};
}

nlohmann::json mc_moments_json(const std::vector<McMoments>& rows) {
  nlohmann::json out = nlohmann::json::object();
  auto block = [&](const char* name, McEstimate McMoments::*field) {
    nlohmann::json b{{"t", nlohmann::json::array()},
                     {"estimate", nlohmann::json::array()},
                     {"std_error", nlohmann::json::array()},
                     {"n_paths", nlohmann::json::array()}};
    for (const auto& r : rows) {
      const McEstimate& e = r.*field;
      b["t"].push_back(r.t);
      b["estimate"].push_back(number(e.value));
      b["std_error"].push_back(number(e.std_error));
      b["n_paths"].push_back(e.n_paths);
    }
    out[name] = std::move(b);
  };
  block("mean_lambda", &McMoments::mean_lambda);
  block("var_lambda", &McMoments::var_lambda);
  block("mean_M", &McMoments::mean_M);
  block("var_M", &McMoments::var_M);
  block("mean_N", &McMoments::mean_N);
  return out;
}

}  // namespace hawkes_queue
