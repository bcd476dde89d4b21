#include "cake/scenario.hpp"

#include "cake/error.hpp"

#include <set>

namespace cake {

using nlohmann::ordered_json;

std::vector<Valuation> Scenario::valuations() const {
  std::vector<Valuation> out;
  out.reserve(agents.size());
  for (const auto& a : agents) out.push_back(Valuation::normalize(a.pieces));
  return out;
}

std::vector<UniformPreference> Scenario::uniform_preferences() const {
  const std::vector<Valuation> v = valuations();
  return cake::uniform_preferences(v);
}

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Rational number(const ordered_json& j, const std::string& where) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    fail(where + ": expected a rational string");
  }
  if (auto r = Rational::try_parse(text)) return *r;
  fail(where + ": cannot read '" + text + "' as a rational");
}

const ordered_json& field(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

PieceKind kind_from(const std::string& s, const std::string& where) {
  if (s == "uniform") return PieceKind::Uniform;
  if (s == "constant") return PieceKind::Constant;
  if (s == "linear") return PieceKind::Linear;
  fail(where + ": unknown valuation type '" + s + "'");
}

const char* kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Uniform: return "uniform";
    case PieceKind::Constant: return "constant";
    case PieceKind::Linear: return "linear";
  }
  return "?";
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::vector<IntervalSet> interval_lists(const ordered_json& j, std::size_t agents, const std::string& where) {
  if (!j.is_array() || j.size() != agents) fail(where + ": expected one interval list per agent");
  std::vector<IntervalSet> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    try {
      out.push_back(interval_set_from_json(j[i]));
    } catch (const Error& e) {
      fail(where + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

}  // namespace

ordered_json interval_set_to_json(const IntervalSet& s) {
  ordered_json arr = ordered_json::array();
  for (const auto& iv : s.intervals()) arr.push_back(ordered_json::array({iv.lo.str(), iv.hi.str()}));
  return arr;
}

IntervalSet interval_set_from_json(const ordered_json& j) {
  if (!j.is_array()) fail("expected a list of [lo, hi] pairs");
  std::vector<Interval> parts;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) fail("expected a [lo, hi] pair");
    parts.push_back({number(p[0], "lo"), number(p[1], "hi")});
  }
  try {
    return IntervalSet(std::move(parts));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Scenario parse_scenario(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    fail("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!doc.is_object()) fail("scenario must be a JSON object");

  Scenario s;
  if (doc.contains("version")) {
    const auto& v = doc.at("version");
    s.version = v.is_string() ? v.get<std::string>() : v.dump();
  }
  const auto& agents = field(doc, "agents", "scenario");
  if (!agents.is_array() || agents.empty()) fail("agents: expected a non-empty list");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const auto& a = agents[i];
    AgentSpec spec;
    if (a.is_object() && a.contains("id")) {
      const auto& id = a.at("id");
      spec.id = id.is_string() ? id.get<std::string>() : id.dump();
    } else {
      spec.id = "a" + std::to_string(i + 1);
    }
    if (!ids.insert(spec.id).second) fail(where + ": duplicate id '" + spec.id + "'");

    const auto& val = field(a, "valuation", where);
    const auto& type = field(val, "type", where + ".valuation");
    if (!type.is_string()) fail(where + ".valuation.type: expected a string");
    spec.kind = kind_from(type.get<std::string>(), where);
    const auto& pieces = field(val, "pieces", where + ".valuation");
    if (!pieces.is_array()) fail(where + ".valuation.pieces: expected a list");
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      const std::string pw = where + ".pieces[" + std::to_string(k) + "]";
      const auto& p = pieces[k];
      Rational lo = number(field(p, "lo", pw), pw + ".lo");
      Rational hi = number(field(p, "hi", pw), pw + ".hi");
      switch (spec.kind) {
        case PieceKind::Uniform: spec.pieces.push_back(PieceSpec::uniform(lo, hi)); break;
        case PieceKind::Constant:
          spec.pieces.push_back(PieceSpec::constant(lo, hi, number(field(p, "value", pw), pw + ".value")));
          break;
        case PieceKind::Linear:
          spec.pieces.push_back(PieceSpec::linear(lo, hi, number(field(p, "slope", pw), pw + ".slope"),
                                                  number(field(p, "intercept", pw), pw + ".intercept")));
          break;
      }
    }
    (void)Valuation::normalize(spec.pieces);  // surfaces InvalidPiece / ZeroMass now
    s.agents.push_back(std::move(spec));
  }

  if (doc.contains("profile") && !doc.at("profile").is_null()) {
    s.profile = interval_lists(doc.at("profile"), s.agents.size(), "profile");
  }
  if (doc.contains("allocation") && !doc.at("allocation").is_null()) {
    s.allocation = Allocation(interval_lists(doc.at("allocation"), s.agents.size(), "allocation"));
  }
  return s;
}

ordered_json scenario_to_json(const Scenario& s) {
  ordered_json doc;
  doc["version"] = s.version;
  ordered_json agents = ordered_json::array();
  for (const auto& a : s.agents) {
    ordered_json pieces = ordered_json::array();
    for (const auto& p : a.pieces) {
      ordered_json pj;
      pj["lo"] = p.lo.str();
      pj["hi"] = p.hi.str();
      if (a.kind == PieceKind::Constant) pj["value"] = p.value.str();
      if (a.kind == PieceKind::Linear) {
        pj["slope"] = p.slope.str();
        pj["intercept"] = p.intercept.str();
      }
      pieces.push_back(std::move(pj));
    }
    ordered_json aj;
    aj["id"] = a.id;
    aj["valuation"] = {{"type", kind_name(a.kind)}, {"pieces", std::move(pieces)}};
    agents.push_back(std::move(aj));
  }
  doc["agents"] = std::move(agents);
  auto lists = [](const std::vector<IntervalSet>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : v) arr.push_back(interval_set_to_json(x));
    return arr;
  };
  if (s.profile) doc["profile"] = lists(*s.profile);
  if (s.allocation) doc["allocation"] = lists(s.allocation->portions);
  return doc;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2) + "\n"; }

Scenario scenario_from_preferences(std::span<const UniformPreference> prefs) {
  Scenario s;
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    AgentSpec a;
    a.id = "a" + std::to_string(i + 1);
    for (const auto& iv : prefs[i].valued().intervals()) a.pieces.push_back(PieceSpec::uniform(iv.lo, iv.hi));
    s.agents.push_back(std::move(a));
  }
  return s;
}

}  // namespace cake
