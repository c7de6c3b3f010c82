#include "hawkes_queue/params_io.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string_view>

namespace hawkes_queue {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 9> kKeys = {
    "lambda_star", "r", "lambda0", "arrival_jump", "mu_star",
    "s", "mu0", "service_jump", "model"};

double number_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw DomainError(std::string(key) + ": missing");
  if (!it->is_number()) throw DomainError(std::string(key) + ": expected a number");
  return it->get<double>();
}

JumpDist jump_field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) throw DomainError(std::string(key) + ": missing");
  if (!it->is_object()) throw DomainError(std::string(key) + ": expected an object");
  for (const auto& [k, _] : it->items()) {
    if (k != "kind" && k != "param") {
      throw DomainError(std::string(key) + "." + k + ": unknown key");
    }
  }
  const auto kind = it->find("kind");
  if (kind == it->end() || !kind->is_string()) {
    throw DomainError(std::string(key) + ".kind: expected \"exponential\" or \"constant\"");
  }
  const auto param = it->find("param");
  if (param == it->end() || !param->is_number()) {
    throw DomainError(std::string(key) + ".param: expected a number");
  }
  const auto name = kind->get<std::string>();
  const double p = param->get<double>();
  try {
    if (name == "exponential") return JumpDist::exponential(p);
    if (name == "constant") return JumpDist::constant(p);
  } catch (const DomainError& e) {
    throw DomainError(std::string(key) + ".param: " + e.what());
  }
  throw DomainError(std::string(key) + ".kind: unknown kind '" + name + "'");
}

json jump_to_json(const JumpDist& d) {
  return json{{"kind", d.kind() == JumpDist::Kind::Exponential ? "exponential" : "constant"},
              {"param", d.param()}};
}

}  // namespace

Model model_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("parameters: expected a JSON object");
  for (const auto& [key, _] : doc.items()) {
    bool known = false;
    for (auto k : kKeys) known = known || key == k;
    if (!known) throw DomainError(key + ": unknown key");
  }

  Model m;
  m.arrival.lambda_star = number_field(doc, "lambda_star");
  m.arrival.r = number_field(doc, "r");
  m.arrival.lambda0 = number_field(doc, "lambda0");
  m.arrival.jump = jump_field(doc, "arrival_jump");
  m.service.mu_star = number_field(doc, "mu_star");
  m.service.s = number_field(doc, "s");
  m.service.mu0 = number_field(doc, "mu0");
  m.service.jump = jump_field(doc, "service_jump");

  const auto model = doc.find("model");
  if (model == doc.end()) throw DomainError("model: missing");
  if (!model->is_string()) throw DomainError("model: expected a string");
  m.kind.tag = parse_model_tag(model->get<std::string>());
  if (m.kind.tag == ModelKind::Tag::MSdHawkes) m.kind.lambda = m.arrival.lambda_star;

  m.validate();
  return m;
}

json model_to_json(const Model& m) {
  return json{{"lambda_star", m.kind.tag == ModelKind::Tag::MSdHawkes ? m.kind.lambda
                                                                       : m.arrival.lambda_star},
              {"r", m.arrival.r},
              {"lambda0", m.arrival.lambda0},
              {"arrival_jump", jump_to_json(m.arrival.jump)},
              {"mu_star", m.service.mu_star},
              {"s", m.service.s},
              {"mu0", m.service.mu0},
              {"service_jump", jump_to_json(m.service.jump)},
              {"model", short_name(m.kind.tag)}};
}

Model load_model(const std::string& text_or_path) {
  const auto first = text_or_path.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && text_or_path[first] == '{') {
    text = text_or_path;
  } else {
    std::ifstream in(text_or_path);
    if (!in) throw DomainError("params: cannot open '" + text_or_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("params: malformed JSON: ") + e.what());
  }
  return model_from_json(doc);
}

}  // namespace hawkes_queue
