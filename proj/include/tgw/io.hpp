#pragma once

#include "tgw/cover.hpp"
#include "tgw/divisors.hpp"
#include "tgw/enumeration.hpp"
#include "tgw/graph.hpp"
#include "tgw/weierstrass.hpp"

#include <map>
#include "json.hpp"
#include <string>

namespace tgw::io {

using Json = nlohmann::json;

/// {"flags":[ids], "root":{id:id}, "involution":{id:id}, "marking"?, "legWeights"?}
Json to_json(const DiscreteGraph& g);
DiscreteGraph graph_from_json(const Json& j);

/// Graph JSON plus "lengths": {edgeId: "p/q"}, keyed by either half-edge of the edge.
Json to_json(const MetricGraph& m);
MetricGraph metric_graph_from_json(const Json& j);

/// {"edge": halfEdgeId, "offset": "p/q"} or a vertex id; offsets run from the root of the half-edge.
Json to_json(const MetricGraph& m, const Point& p);
Point point_from_json(const MetricGraph& m, const Json& j);

/// [{"at": point, "coeff": int}]
Json to_json(const MetricGraph& m, const Divisor& d);
Divisor divisor_from_json(const MetricGraph& m, const Json& j);

/// {"source", "target", "flagMap": {id:id}, "degree": {id:int}}; validated on read.
Json to_json(const Cover& c);
Cover cover_from_json(const Json& j);

Json to_json(const EnumerationResult& r);
Json to_json(const MetricGraph& m, const GwpReport& r);

Json integer_json(const Integer& z);
Json rational_json(const Rational& q);
Json to_json(const RationalMatrix& a);

/// Vertices as nodes, edges labelled by their first half-edge (and length), legs to point nodes.
/// Annotations are appended to the vertex or edge label carrying the point.
std::string to_dot(const DiscreteGraph& g, const std::string& name = "G");
std::string to_dot(const MetricGraph& m, const std::map<Point, std::string>& annotations = {},
                   const std::string& name = "G");

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tgw::io
