#pragma once

// JSON wire format for traces:
//   {"n": 3, "moves": [{"op":"eat"}, {"op":"walk","to":"1/3"}, {"op":"pick"}, {"op":"drop"}]}
// Positions travel as exact "p/q" strings, never as JSON numbers.

#include "camel/desert_model.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace camel {

inline nlohmann::json move_to_json(const Move& m) {
  struct {
    nlohmann::json operator()(const Eat&) const { return {{"op", "eat"}}; }
    nlohmann::json operator()(const Walk& w) const { return {{"op", "walk"}, {"to", w.to.str()}}; }
    nlohmann::json operator()(const PickUp&) const { return {{"op", "pick"}}; }
    nlohmann::json operator()(const Drop&) const { return {{"op", "drop"}}; }
  } v;
  return std::visit(v, m);
}

inline nlohmann::json trace_to_json(const Trace& t) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& m : t.moves) moves.push_back(move_to_json(m));
  return {{"n", t.n}, {"moves", std::move(moves)}};
}

inline Move move_from_json(const nlohmann::json& j, std::size_t index) {
  auto fail = [index](const std::string& why) {
    return std::invalid_argument("move " + std::to_string(index) + ": " + why);
  };
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) throw fail("expected {\"op\": ...}");
  const auto op = j["op"].get<std::string>();
  if (op == "eat") return Eat{};
  if (op == "pick") return PickUp{};
  if (op == "drop") return Drop{};
  if (op == "walk") {
    if (!j.contains("to") || !j["to"].is_string()) throw fail("walk needs a string \"to\" field");
    try {
      return Walk{Rational::parse(j["to"].get<std::string>())};
    } catch (const std::invalid_argument& e) {
      throw fail(e.what());
    }
  }
  throw fail("unknown op '" + op + "'");
}

inline Trace trace_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("trace must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1)
    throw std::invalid_argument("trace needs a positive integer \"n\"");
  if (!j.contains("moves") || !j["moves"].is_array())
    throw std::invalid_argument("trace needs a \"moves\" array");
  Trace t;
  t.n = j["n"].get<std::size_t>();
  const auto& moves = j["moves"];
  t.moves.reserve(moves.size());
  for (std::size_t i = 0; i < moves.size(); ++i) t.moves.push_back(move_from_json(moves[i], i));
  return t;
}

inline Trace parse_trace(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("trace is not valid JSON: ") + e.what());
  }
  return trace_from_json(j);
}

}  // namespace camel
