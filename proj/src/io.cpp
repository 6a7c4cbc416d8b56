#include "tgw/io.hpp"

#include "tgw/error.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace tgw::io {

namespace {

long long parse_id(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw Error(ErrorKind::ParseError, "flag id '" + s + "' is not an integer");
    return v;
}

long long id_of(const Json& j) {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_string()) return parse_id(j.get<std::string>());
    throw Error(ErrorKind::ParseError, "flag id must be an integer, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

Rational rational_of(const Json& j, ErrorKind kind) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error&) {
        }
    }
    throw Error(kind, "expected a rational \"p/q\", got " + j.dump());
}

int flag_index(const DiscreteGraph& g, long long label) {
    int f = g.flag_of_label(label);
    if (f < 0) throw Error(ErrorKind::UnknownFlag, "unknown flag " + std::to_string(label));
    return f;
}

std::string key(const DiscreteGraph& g, int f) { return std::to_string(g.label(f)); }

}  // namespace

Json integer_json(const Integer& z) {
    if (z >= std::numeric_limits<long long>::min() && z <= std::numeric_limits<long long>::max()) return to_ll(z);
    return z.str();
}

Json rational_json(const Rational& q) { return to_string(q); }

Json to_json(const RationalMatrix& a) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c) row.push_back(rational_json(a(r, c)));
        rows.push_back(row);
    }
    return rows;
}

Json to_json(const DiscreteGraph& g) {
    Json j;
    j["flags"] = Json::array();
    j["root"] = Json::object();
    j["involution"] = Json::object();
    for (int f = 0; f < g.num_flags(); ++f) {
        j["flags"].push_back(g.label(f));
        j["root"][key(g, f)] = g.label(g.root(f));
        j["involution"][key(g, f)] = g.label(g.involution(f));
    }
    if (g.is_marked()) {
        j["marking"] = Json::object();
        for (std::size_t i = 0; i < g.marking().size(); ++i) j["marking"][std::to_string(i + 1)] = g.label(g.marking()[i]);
    }
    if (g.has_leg_weights()) {
        j["legWeights"] = Json::object();
        for (int f : g.legs()) j["legWeights"][key(g, f)] = g.leg_weight(f);
    }
    return j;
}

DiscreteGraph graph_from_json(const Json& j) {
    const Json& flags = field(j, "flags");
    if (!flags.is_array()) throw Error(ErrorKind::ParseError, "'flags' must be a list");
    std::vector<long long> labels;
    std::unordered_map<long long, int> index;
    for (const auto& x : flags) {
        long long id = id_of(x);
        if (!index.emplace(id, static_cast<int>(labels.size())).second)
            throw Error(ErrorKind::ParseError, "duplicate flag " + std::to_string(id));
        labels.push_back(id);
    }
    const int n = static_cast<int>(labels.size());
    auto lookup = [&](long long id) {
        auto it = index.find(id);
        if (it == index.end()) throw Error(ErrorKind::UnknownFlag, "unknown flag " + std::to_string(id));
        return it->second;
    };
    auto read_map = [&](const char* name) {
        const Json& m = field(j, name);
        if (!m.is_object()) throw Error(ErrorKind::ParseError, std::string("'") + name + "' must be an object");
        std::vector<int> out(n, -1);
        for (const auto& [k, v] : m.items()) out[lookup(parse_id(k))] = lookup(id_of(v));
        for (int f = 0; f < n; ++f)
            if (out[f] < 0)
                throw Error(ErrorKind::UnknownFlag, std::string("'") + name + "' misses flag " + std::to_string(labels[f]));
        return out;
    };
    auto root = read_map("root");
    auto inv = read_map("involution");
    std::vector<int> marking;
    if (j.contains("marking")) {
        const Json& m = j.at("marking");
        std::map<long long, int> byMark;
        for (const auto& [k, v] : m.items()) byMark[parse_id(k)] = lookup(id_of(v));
        long long expect = 1;
        for (const auto& [mark, f] : byMark) {
            if (mark != expect++) throw Error(ErrorKind::MarkingNotBijective, "marks must be 1..n");
            marking.push_back(f);
        }
    }
    std::vector<int> weights;
    if (j.contains("legWeights")) {
        weights.assign(n, 0);
        for (const auto& [k, v] : j.at("legWeights").items()) {
            if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "leg weight must be an integer");
            weights[lookup(parse_id(k))] = v.get<int>();
        }
    }
    return DiscreteGraph(std::move(root), std::move(inv), std::move(marking), std::move(weights), std::move(labels));
}

Json to_json(const MetricGraph& m) {
    Json j = to_json(m.graph());
    j["lengths"] = Json::object();
    const auto& g = m.graph();
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        j["lengths"][key(g, g.edges()[e].first)] = rational_json(m.length(static_cast<int>(e)));
    return j;
}

MetricGraph metric_graph_from_json(const Json& j) {
    DiscreteGraph g = graph_from_json(j);
    const Json& lj = field(j, "lengths");
    std::vector<std::optional<Rational>> lengths(g.edges().size());
    for (const auto& [k, v] : lj.items()) {
        int f = flag_index(g, parse_id(k));
        if (!g.is_edge_flag(f)) throw Error(ErrorKind::UnknownFlag, "length given for non-edge flag " + k);
        auto& slot = lengths[g.edge_index(f)];
        Rational len = rational_of(v, ErrorKind::ParseError);
        if (slot && *slot != len) throw Error(ErrorKind::ParseError, "conflicting lengths for edge of flag " + k);
        slot = len;
    }
    std::vector<Rational> out;
    for (std::size_t e = 0; e < lengths.size(); ++e) {
        if (!lengths[e]) throw Error(ErrorKind::ParseError, "missing length for edge of flag " + key(g, g.edges()[e].first));
        out.push_back(*lengths[e]);
    }
    return MetricGraph(std::move(g), std::move(out));
}

Json to_json(const MetricGraph& m, const Point& p) {
    const auto& g = m.graph();
    if (p.is_vertex()) return g.label(p.vertex);
    Json j;
    j["edge"] = g.label(g.edges()[p.edge].first);
    j["offset"] = rational_json(p.offset);
    return j;
}

Point point_from_json(const MetricGraph& m, const Json& j) {
    const auto& g = m.graph();
    if (j.is_object()) {
        int f = flag_index(g, id_of(field(j, "edge")));
        Rational offset = rational_of(field(j, "offset"), ErrorKind::IrrationalSupport);
        return Point::along(m, f, offset);
    }
    int v = flag_index(g, id_of(j));
    if (!g.is_vertex(v)) throw Error(ErrorKind::UnknownFlag, "flag " + j.dump() + " is not a vertex");
    return Point::at_vertex(v);
}

Json to_json(const MetricGraph& m, const Divisor& d) {
    Json out = Json::array();
    for (const auto& [p, c] : d.terms()) out.push_back(Json{{"at", to_json(m, p)}, {"coeff", c}});
    return out;
}

Divisor divisor_from_json(const MetricGraph& m, const Json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, "divisor must be a list");
    Divisor d;
    for (const auto& t : j) {
        const Json& c = field(t, "coeff");
        if (!c.is_number_integer()) throw Error(ErrorKind::ParseError, "coefficient must be an integer");
        d.add(point_from_json(m, field(t, "at")), c.get<long long>());
    }
    return d;
}

Json to_json(const Cover& c) {
    Json j;
    j["source"] = to_json(c.source);
    j["target"] = to_json(c.target);
    j["flagMap"] = Json::object();
    j["degree"] = Json::object();
    for (int f = 0; f < c.source.num_flags(); ++f) {
        j["flagMap"][key(c.source, f)] = c.target.label(c.flagMap[f]);
        j["degree"][key(c.source, f)] = c.degree[f];
    }
    return j;
}

Cover cover_from_json(const Json& j) {
    Cover c;
    c.source = graph_from_json(field(j, "source"));
    c.target = graph_from_json(field(j, "target"));
    const int n = c.source.num_flags();
    c.flagMap.assign(n, -1);
    c.degree.assign(n, 0);
    for (const auto& [k, v] : field(j, "flagMap").items())
        c.flagMap[flag_index(c.source, parse_id(k))] = flag_index(c.target, id_of(v));
    for (const auto& [k, v] : field(j, "degree").items()) {
        if (!v.is_number_integer()) throw Error(ErrorKind::ParseError, "degree must be an integer");
        c.degree[flag_index(c.source, parse_id(k))] = v.get<int>();
    }
    for (int f = 0; f < n; ++f) {
        if (c.flagMap[f] < 0) throw Error(ErrorKind::UnknownFlag, "flagMap misses flag " + key(c.source, f));
        if (c.degree[f] <= 0) throw Error(ErrorKind::NonpositiveWeight, "degree of flag " + key(c.source, f) + " must be positive");
    }
    validate_cover(c);
    return c;
}

Json to_json(const EnumerationResult& r) {
    Json j;
    j["genus"] = r.genus;
    j["mode"] = r.mode == EnumerationMode::Quotient ? "quotient" : "labelled";
    j["trees"] = r.trees.size();
    Json covers = Json::array();
    for (const auto& rec : r.covers) {
        Json c;
        c["cover"] = to_json(rec.cover);
        c["tree"] = rec.treeIndex;
        c["orbitSize"] = integer_json(rec.orbitSize);
        c["symmetryOrder"] = integer_json(rec.symmetryOrder);
        c["contributing"] = rec.contributing;
        if (rec.contributing) {
            c["weight"] = rational_json(rec.weight.weight);
            c["det"] = rational_json(rec.det);
            c["horizontalStabilizer"] = integer_json(rec.stab.horizontal);
            c["verticalStabilizer"] = integer_json(rec.stab.vertical);
            c["multiplicity"] = integer_json(rec.multiplicity);
            c["ftF"] = to_json(rec.ftF);
        }
        covers.push_back(std::move(c));
    }
    j["covers"] = std::move(covers);
    return j;
}

Json to_json(const MetricGraph& m, const GwpReport& r) {
    Json j;
    j["genus"] = r.genus;
    j["graph"] = to_json(m);
    j["total"] = integer_json(r.total);
    j["expected"] = integer_json(r.expected);
    j["certified"] = r.certified;
    j["genericityViolation"] = r.genericityViolation;
    j["warnings"] = r.warnings;
    Json classes = Json::array();
    for (const auto& c : r.classes) {
        Json x;
        x["cover"] = c.coverIndex;
        x["point"] = to_json(m, c.point);
        x["multiplicity"] = integer_json(c.multiplicity);
        x["witnesses"] = c.members.size();
        Json orbit = Json::array();
        for (const auto& p : c.orbit) orbit.push_back(to_json(m, p));
        x["orbit"] = std::move(orbit);
        if (c.weierstrass) x["weierstrass"] = *c.weierstrass;
        classes.push_back(std::move(x));
    }
    j["classes"] = std::move(classes);
    Json table = Json::array();
    for (const auto& [p, mult] : r.pointTable) table.push_back(Json{{"at", to_json(m, p)}, {"multiplicity", integer_json(mult)}});
    j["points"] = std::move(table);
    return j;
}

namespace {

std::string dot(const DiscreteGraph& g, const std::vector<Rational>* lengths,
                const std::map<Point, std::string>& annotations, const std::string& name) {
    std::map<int, std::string> atVertex;
    std::map<int, std::string> onEdge;
    for (const auto& [p, text] : annotations) {
        if (p.is_vertex()) {
            atVertex[p.vertex] += " " + text;
        } else {
            auto& s = onEdge[p.edge];
            s += (s.empty() ? "" : ", ") + text + "@" + to_string(p.offset);
        }
    }
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v : g.vertices()) {
        out << "  v" << g.label(v) << " [label=\"" << g.label(v);
        if (auto it = atVertex.find(v); it != atVertex.end()) out << " |" << it->second;
        out << "\"];\n";
    }
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        auto [a, b] = g.edges()[e];
        out << "  v" << g.label(g.root(a)) << " -- v" << g.label(g.root(b)) << " [label=\"" << g.label(a);
        if (lengths) out << " (" << to_string((*lengths)[e]) << ")";
        if (auto it = onEdge.find(static_cast<int>(e)); it != onEdge.end()) out << " [" << it->second << "]";
        out << "\"];\n";
    }
    for (int f : g.legs()) {
        out << "  l" << g.label(f) << " [shape=point,label=\"\"];\n";
        out << "  v" << g.label(g.root(f)) << " -- l" << g.label(f) << " [label=\"" << g.label(f);
        if (g.mark_of(f)) out << " #" << g.mark_of(f);
        if (g.has_leg_weights()) out << " w" << g.leg_weight(f);
        out << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace

std::string to_dot(const DiscreteGraph& g, const std::string& name) { return dot(g, nullptr, {}, name); }

std::string to_dot(const MetricGraph& m, const std::map<Point, std::string>& annotations, const std::string& name) {
    return dot(m.graph(), &m.lengths(), annotations, name);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::UsageError, "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::UsageError, "cannot write " + path);
    out << text;
}

}  // namespace tgw::io
