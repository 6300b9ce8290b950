#pragma once

#include <json.hpp>

#include "lri/daniell.hpp"
#include "lri/formal_sum.hpp"
#include "lri/gauge.hpp"
#include "lri/integral.hpp"
#include "lri/measure.hpp"

namespace lri::io {

using nlohmann::json;

// Parsers are strict: unknown fields and malformed payloads raise ParseError.

json rat_json(const Rat& r);
Rat rat_of(const json& j);

json xreal_json(const XReal& v);
XReal xreal_of(const json& j);
json xnonneg_json(const XNonneg& v);

json interval_json(const Interval& i);
Interval interval_of(const json& j);

json interval_list_json(const std::vector<Interval>& v);
std::vector<Interval> interval_list_of(const json& j);

json measure_json(const RealMeasure& m);
RealMeasure measure_of(const json& j);

json fsum_json(const FormalSum& c);
FormalSum fsum_of(const json& j);

json profile_json(const StepProfile& f);
StepProfile profile_of(const json& j);

json colored_pieces_json(const ColoredPieces& p);

json variation_report_json(const VariationReport& r);

json gauge_json(const Gauge& g);
Gauge gauge_of(const json& j, const Interval& domain);

json stone_point_json(const StonePoint& p);
StonePoint stone_point_of(const json& j);

json division_json(const TaggedDivision& d);
TaggedDivision division_of(const json& j);

json cert_json(const NegligibilityCert& c);

json representation_json(const RepresentationTable& t);

// A parallel tree with every rational/extended string replaced by a decimal
// approximation; used by the CLI's --float-view annotation.
json float_view(const json& j);

}  // namespace lri::io
