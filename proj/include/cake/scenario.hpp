#pragma once

// Scenario files: agents with their valuations, plus an optional strategy
// profile and an optional allocation. Every number is an exact "p/q" string
// on output; decimals such as "0.4" are accepted on input.
//
//   {
//     "version": "1",
//     "agents": [
//       {"id": "a", "valuation": {"type": "uniform", "pieces": [{"lo": "0", "hi": "1/2"}]}},
//       {"id": "b", "valuation": {"type": "constant",
//                                 "pieces": [{"lo": "0", "hi": "1", "value": "3"}]}}
//     ],
//     "profile":    [[["0", "1/2"]], [["1/2", "1"]]],
//     "allocation": [[["0", "1/2"]], [["1/2", "1"]]]
//   }

#include "cake/allocation.hpp"
#include "cake/uniform_mechanisms.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace cake {

struct AgentSpec {
  std::string id;
  PieceKind kind = PieceKind::Uniform;
  std::vector<PieceSpec> pieces;  // as written, before normalisation

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

struct Scenario {
  std::string version = "1";
  std::vector<AgentSpec> agents;
  std::optional<std::vector<IntervalSet>> profile;
  std::optional<Allocation> allocation;

  [[nodiscard]] std::vector<Valuation> valuations() const;
  /// Throws Error{UnsupportedValuationClass} unless every agent is piecewise uniform.
  [[nodiscard]] std::vector<UniformPreference> uniform_preferences() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws Error{ParseError} (with line and column for malformed JSON) and
/// Error{InvalidPiece} / Error{ZeroMass} for bad valuations.
Scenario parse_scenario(std::string_view text);
nlohmann::ordered_json scenario_to_json(const Scenario& s);
std::string serialize_scenario(const Scenario& s);

/// Builds a scenario of piecewise uniform agents named a1, a2, ...
Scenario scenario_from_preferences(std::span<const UniformPreference> prefs);

nlohmann::ordered_json interval_set_to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const nlohmann::ordered_json& j);

}  // namespace cake
