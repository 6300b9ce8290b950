#include "lri/json_io.hpp"

#include <algorithm>

#include "lri/error.hpp"

namespace lri::io {

namespace {

void expect_keys(const json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ParseError("expected a JSON object: " + j.dump());
  for (const char* k : required)
    if (!j.contains(k))
      throw ParseError(std::string("missing field \"") + k + "\": " + j.dump());
  for (const auto& [key, _] : j.items()) {
    auto in = [&key](std::initializer_list<const char*> set) {
      return std::any_of(set.begin(), set.end(),
                         [&key](const char* k) { return key == k; });
    };
    if (!in(required) && !in(optional))
      throw ParseError("unknown field \"" + key + "\": " + j.dump());
  }
}

std::string string_of(const json& j, const char* what) {
  if (!j.is_string())
    throw ParseError(std::string("expected a string for ") + what + ": " +
                     j.dump());
  return j.get<std::string>();
}

bool bool_of(const json& j, const char* what) {
  if (!j.is_boolean())
    throw ParseError(std::string("expected a bool for ") + what + ": " +
                     j.dump());
  return j.get<bool>();
}

}  // namespace

json rat_json(const Rat& r) { return rat_to_string(r); }

Rat rat_of(const json& j) { return rat_from_string(string_of(j, "rational")); }

json xreal_json(const XReal& v) {
  switch (v.kind()) {
    case XKind::PosInf:
      return "+inf";
    case XKind::NegInf:
      return "-inf";
    case XKind::BothInf:
      return "~inf";
    case XKind::Finite:
      break;
  }
  return rat_to_string(v.value());
}

XReal xreal_of(const json& j) {
  std::string s = string_of(j, "extended real");
  if (s == "+inf") return XReal::pos_inf();
  if (s == "-inf") return XReal::neg_inf();
  if (s == "~inf") return XReal::both_inf();
  return XReal(rat_from_string(s));
}

json xnonneg_json(const XNonneg& v) {
  return v.is_inf() ? json("+inf") : json(rat_to_string(v.value()));
}

json interval_json(const Interval& i) {
  if (i.is_empty()) return json{{"empty", true}};
  return json{{"lo", rat_to_string(i.lo())},
              {"lo_closed", i.lo_closed()},
              {"hi", rat_to_string(i.hi())},
              {"hi_closed", i.hi_closed()}};
}

Interval interval_of(const json& j) {
  if (j.is_object() && j.contains("empty")) {
    expect_keys(j, {"empty"});
    if (!bool_of(j["empty"], "empty")) throw ParseError("\"empty\" must be true");
    return Interval::empty();
  }
  expect_keys(j, {"lo", "lo_closed", "hi", "hi_closed"});
  return Interval(rat_of(j["lo"]), bool_of(j["lo_closed"], "lo_closed"),
                  rat_of(j["hi"]), bool_of(j["hi_closed"], "hi_closed"));
}

json interval_list_json(const std::vector<Interval>& v) {
  json out = json::array();
  for (const Interval& i : v) out.push_back(interval_json(i));
  return out;
}

std::vector<Interval> interval_list_of(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of intervals");
  std::vector<Interval> out;
  for (const json& e : j) out.push_back(interval_of(e));
  return out;
}

json measure_json(const RealMeasure& m) {
  json lebesgue = json::array();
  for (const auto& p : m.pieces())
    lebesgue.push_back(json{{"weight", rat_to_string(p.weight)},
                            {"support", interval_json(p.support)}});
  json atoms = json::array();
  for (const auto& a : m.atoms())
    atoms.push_back(json{{"mass", rat_to_string(a.mass)},
                         {"point", rat_to_string(a.point)}});
  return json{{"lebesgue", lebesgue}, {"atoms", atoms}};
}

RealMeasure measure_of(const json& j) {
  expect_keys(j, {}, {"lebesgue", "atoms"});
  std::vector<WeightedPiece> pieces;
  std::vector<PointMass> atoms;
  if (j.contains("lebesgue")) {
    if (!j["lebesgue"].is_array()) throw ParseError("\"lebesgue\" must be an array");
    for (const json& e : j["lebesgue"]) {
      expect_keys(e, {"weight", "support"});
      pieces.push_back({rat_of(e["weight"]), interval_of(e["support"])});
    }
  }
  if (j.contains("atoms")) {
    if (!j["atoms"].is_array()) throw ParseError("\"atoms\" must be an array");
    for (const json& e : j["atoms"]) {
      expect_keys(e, {"mass", "point"});
      atoms.push_back({rat_of(e["mass"]), rat_of(e["point"])});
    }
  }
  return RealMeasure(std::move(pieces), std::move(atoms));
}

json fsum_json(const FormalSum& c) {
  json terms = json::array();
  for (const Term& t : c.terms())
    terms.push_back(
        json{{"coeff", xreal_json(t.coeff())}, {"set", interval_json(t.set)}});
  return json{{"terms", terms}};
}

FormalSum fsum_of(const json& j) {
  expect_keys(j, {"terms"});
  if (!j["terms"].is_array()) throw ParseError("\"terms\" must be an array");
  std::vector<std::pair<XReal, Interval>> pairs;
  for (const json& e : j["terms"]) {
    expect_keys(e, {"coeff", "set"});
    XReal coeff = xreal_of(e["coeff"]);
    if (coeff.is_both_inf())
      throw ParseError("formal sum coefficient cannot be \"~inf\"");
    pairs.emplace_back(coeff, interval_of(e["set"]));
  }
  return FormalSum::from_signed(pairs);
}

json profile_json(const StepProfile& f) {
  json parts = json::array();
  for (const auto& [set, value] : f.parts())
    parts.push_back(
        json{{"set", interval_json(set)}, {"value", xreal_json(value)}});
  return json{{"parts", parts}};
}

StepProfile profile_of(const json& j) {
  expect_keys(j, {"parts"});
  if (!j["parts"].is_array()) throw ParseError("\"parts\" must be an array");
  std::vector<std::pair<Interval, XReal>> parts;
  for (const json& e : j["parts"]) {
    expect_keys(e, {"set", "value"});
    parts.emplace_back(interval_of(e["set"]), xreal_of(e["value"]));
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t k = i + 1; k < parts.size(); ++k)
      if (!disjoint(parts[i].first, parts[k].first))
        throw ParseError("step profile parts overlap");
  return StepProfile::from_parts(std::move(parts));
}

json colored_pieces_json(const ColoredPieces& p) {
  json pieces = json::array();
  for (const ColoredPiece& c : p.pieces)
    pieces.push_back(json{
        {"coeff", rat_to_string(c.coeff)},
        {"set", interval_json(c.set)},
        {"color", c.color},
        {"lift", json::array({rat_to_string(c.lift_lo), rat_to_string(c.lift_hi)})},
        {"progenitor", json{{"input", c.input_index}, {"term", c.term_index}}}});
  return json{{"pieces", pieces}, {"inputs", p.input_count}};
}

json variation_report_json(const VariationReport& r) {
  return json{{"pos", xnonneg_json(r.pos)},
              {"neg", xnonneg_json(r.neg)},
              {"total", xnonneg_json(r.total)},
              {"overall", xreal_json(r.overall)}};
}

json gauge_json(const Gauge& g) {
  json cells = json::array();
  for (const auto& c : g.cells())
    cells.push_back(json{{"interval", interval_json(c.where)},
                         {"delta", rat_to_string(c.delta)}});
  return json{{"cells", cells}};
}

Gauge gauge_of(const json& j, const Interval& domain) {
  if (j.is_object() && j.contains("constant")) {
    expect_keys(j, {"constant"});
    return Gauge::constant(domain, rat_of(j["constant"]));
  }
  expect_keys(j, {"cells"});
  if (!j["cells"].is_array()) throw ParseError("\"cells\" must be an array");
  std::vector<Gauge::Cell> cells;
  for (const json& e : j["cells"]) {
    expect_keys(e, {"interval", "delta"});
    cells.push_back({interval_of(e["interval"]), rat_of(e["delta"])});
  }
  return Gauge(std::move(cells));
}

namespace {

StoneSide side_of(const std::string& s) {
  if (s == "at") return StoneSide::At;
  if (s == "right") return StoneSide::RightLimit;
  if (s == "left") return StoneSide::LeftLimit;
  throw ParseError("unknown stone side \"" + s + "\"");
}

std::string side_str(StoneSide s) {
  switch (s) {
    case StoneSide::At:
      return "at";
    case StoneSide::RightLimit:
      return "right";
    case StoneSide::LeftLimit:
      return "left";
  }
  return "at";
}

}  // namespace

json stone_point_json(const StonePoint& p) {
  return json{{"base", rat_to_string(p.base)}, {"side", side_str(p.side)}};
}

StonePoint stone_point_of(const json& j) {
  if (j.is_string()) return {rat_of(j), StoneSide::At};
  expect_keys(j, {"base", "side"});
  return {rat_of(j["base"]), side_of(string_of(j["side"], "side"))};
}

json division_json(const TaggedDivision& d) {
  json cells = json::array();
  for (const Interval& c : d.cells) cells.push_back(interval_json(c));
  json tags = json::array();
  for (const StonePoint& t : d.tags) tags.push_back(stone_point_json(t));
  return json{{"cells", cells}, {"tags", tags}};
}

TaggedDivision division_of(const json& j) {
  expect_keys(j, {"cells", "tags"});
  TaggedDivision d;
  d.cells = interval_list_of(j["cells"]);
  if (!j["tags"].is_array()) throw ParseError("\"tags\" must be an array");
  for (const json& e : j["tags"]) d.tags.push_back(stone_point_of(e));
  if (d.cells.size() != d.tags.size())
    throw ParseError("division needs one tag per cell");
  return d;
}

json cert_json(const NegligibilityCert& c) {
  return json{{"intervals", interval_list_json(c.intervals)},
              {"depth", c.depth},
              {"epsilon", rat_to_string(c.epsilon)}};
}

json representation_json(const RepresentationTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries)
    entries.push_back(json{{"set", interval_list_json(e.set)},
                           {"value", rat_to_string(e.value)}});
  return json{{"entries", entries}};
}

namespace {

json float_of_string(const std::string& s) {
  if (s == "+inf") return "+inf";
  if (s == "-inf") return "-inf";
  if (s == "~inf") return "~inf";
  return rat_to_double(rat_from_string(s));
}

bool looks_rational(const std::string& s) {
  if (s.empty()) return false;
  if (s == "+inf" || s == "-inf" || s == "~inf") return true;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  bool slash_seen = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '/' && !slash_seen) {
      slash_seen = true;
      continue;
    }
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

json float_view(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = float_view(v);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const json& v : j) out.push_back(float_view(v));
    return out;
  }
  if (j.is_string() && looks_rational(j.get<std::string>()))
    return float_of_string(j.get<std::string>());
  return j;
}

}  // namespace lri::io
