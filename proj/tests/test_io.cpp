#include "doctest.h"

#include "tgw/error.hpp"
#include "tgw/io.hpp"

#include <cstdio>
#include <functional>
#include <optional>

using namespace tgw;
using io::Json;

namespace {

std::optional<ErrorKind> kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

bool same_graph(const DiscreteGraph& a, const DiscreteGraph& b) {
    return a.root_map() == b.root_map() && a.involution_map() == b.involution_map() && a.marking() == b.marking() &&
           a.leg_weights() == b.leg_weights() && a.labels() == b.labels();
}

const EnumerationResult& genus2() {
    static const EnumerationResult r = enumerate_all(2, EnumerationMode::Quotient);
    return r;
}

}  // namespace

TEST_CASE("graphs round trip") {
    for (const auto& g : {families::dumbbell(), families::theta(), families::k4(), families::loops_on_caterpillar(4),
                          families::caterpillar_tree(3)}) {
        auto j = io::to_json(g);
        auto back = io::graph_from_json(j);
        CHECK(io::to_json(back) == j);
        CHECK(back.genus() == g.genus());
        CHECK(back.marking().size() == g.marking().size());
    }
    for (const auto& rec : genus2().covers) {
        auto j = io::to_json(rec.cover.source);
        CHECK(io::to_json(io::graph_from_json(j)) == j);
    }
    // labels are kept, ids need not be dense
    Json sparse = {{"flags", {10, 20, 30}}, {"root", {{"10", 10}, {"20", 10}, {"30", 10}}},
                   {"involution", {{"10", 10}, {"20", 30}, {"30", 20}}}};
    auto g = io::graph_from_json(sparse);
    CHECK(g.genus() == 1);
    CHECK(io::to_json(g) == sparse);
    CHECK(same_graph(io::graph_from_json(io::to_json(g)), g));
}

TEST_CASE("malformed graphs") {
    CHECK(kind_of([] { io::graph_from_json(Json::object()); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { io::graph_from_json(Json{{"flags", {0, 0}}, {"root", Json::object()}, {"involution", Json::object()}}); }) ==
          ErrorKind::ParseError);
    Json badRoot = {{"flags", {0, 1}}, {"root", {{"0", 1}, {"1", 1}}}, {"involution", {{"0", 1}, {"1", 0}}}};
    CHECK(kind_of([&] { io::graph_from_json(badRoot); }).has_value());
    Json unknown = {{"flags", {0, 1}}, {"root", {{"0", 0}, {"1", 7}}}, {"involution", {{"0", 0}, {"1", 1}}}};
    CHECK(kind_of([&] { io::graph_from_json(unknown); }) == ErrorKind::UnknownFlag);
}

TEST_CASE("metric graphs, points and divisors") {
    MetricGraph m(families::dumbbell(), {Rational(7, 3), Rational(11, 5), Rational(13, 7)});
    auto j = io::to_json(m);
    CHECK(j["lengths"]["2"] == "7/3");
    auto back = io::metric_graph_from_json(j);
    CHECK(back.lengths() == m.lengths());
    CHECK(io::to_json(back) == j);

    // either half-edge may carry the length
    Json other = j;
    other["lengths"] = {{"3", "7/3"}, {"4", "11/5"}, {"7", "13/7"}};
    CHECK(io::metric_graph_from_json(other).lengths() == m.lengths());
    other["lengths"]["2"] = "1";
    CHECK(kind_of([&] { io::metric_graph_from_json(other); }) == ErrorKind::ParseError);

    Divisor d;
    d.add(Point::at_vertex(0), 2);
    d.add(Point::along(m, 2, Rational(1, 3)), -1);
    d.add(Point::along(m, 3, Rational(1, 3)), 3);
    d.add(Point::along(m, 6, Rational(1)), 1);
    auto dj = io::to_json(m, d);
    CHECK(io::divisor_from_json(m, dj) == d);
    CHECK(io::to_json(m, io::divisor_from_json(m, dj)) == dj);

    Json p = {{"edge", 3}, {"offset", "2"}};
    CHECK(io::point_from_json(m, p) == Point::along(m, 2, Rational(1, 3)));
    CHECK(io::point_from_json(m, Json(1)) == Point::at_vertex(1));
    CHECK(kind_of([&] { io::point_from_json(m, Json{{"edge", 2}, {"offset", 0.5}}); }) == ErrorKind::IrrationalSupport);
    CHECK(kind_of([&] { io::point_from_json(m, Json{{"edge", 2}, {"offset", "sqrt(2)"}}); }) == ErrorKind::IrrationalSupport);
    CHECK(kind_of([&] { io::point_from_json(m, Json(2)); }) == ErrorKind::UnknownFlag);
    CHECK(kind_of([&] { io::divisor_from_json(m, Json::array({{{"at", 0}, {"coeff", 1.5}}})); }) == ErrorKind::ParseError);
}

TEST_CASE("covers round trip through the validator") {
    for (const auto& rec : genus2().covers) {
        auto j = io::to_json(rec.cover);
        auto back = io::cover_from_json(j);
        CHECK(io::to_json(back) == j);
        CHECK(back.flagMap == rec.cover.flagMap);
        CHECK(back.degree == rec.cover.degree);
    }
    auto j = io::to_json(genus2().covers.front().cover);
    for (auto& [k, v] : j["degree"].items())
        if (v == 2) {
            v = 1;
            break;
        }
    CHECK(kind_of([&] { io::cover_from_json(j); }) == ErrorKind::NotHarmonic);
}

TEST_CASE("enumeration and report documents") {
    auto j = io::to_json(genus2());
    REQUIRE(j["covers"].size() == genus2().covers.size());
    for (const auto& c : j["covers"]) {
        io::cover_from_json(c["cover"]);
        if (c["contributing"]) {
            CHECK(c.contains("multiplicity"));
            CHECK(c.contains("ftF"));
        }
    }

    MetricGraph m(families::dumbbell(), {Rational(7, 3), Rational(11, 5), Rational(13, 7)});
    auto report = count_gwp(m, genus2());
    auto rj = io::to_json(m, report);
    CHECK(rj["total"] == 6);
    CHECK(rj["certified"] == true);
    long long sum = 0;
    for (const auto& pt : rj["points"]) {
        sum += pt["multiplicity"].get<long long>();
        io::point_from_json(io::metric_graph_from_json(rj["graph"]), pt["at"]);
    }
    CHECK(sum == 6);
    long long classSum = 0;
    for (const auto& c : rj["classes"]) {
        classSum += c["multiplicity"].get<long long>();
        // classes point into the enumeration by index
        CHECK(c["cover"].get<std::size_t>() < genus2().covers.size());
    }
    CHECK(classSum == 6);
}

TEST_CASE("numbers") {
    CHECK(io::integer_json(Integer(5)) == 5);
    Integer big = Integer(1) << 80;
    CHECK(io::integer_json(big) == big.str());
    CHECK(io::rational_json(Rational(-3, 6)) == "-1/2");
    CHECK(io::rational_json(Rational(4)) == "4");
    RationalMatrix a(1, 2);
    a << Rational(1, 2), Rational(3);
    CHECK(io::to_json(a) == Json::array({Json::array({"1/2", "3"})}));
}

TEST_CASE("dot") {
    MetricGraph m(families::dumbbell(), {Rational(7, 3), Rational(11, 5), Rational(13, 7)});
    auto dot = io::to_dot(m, {{Point::at_vertex(0), "x1"}});
    CHECK(dot.rfind("graph G {", 0) == 0);
    CHECK(dot.find("x1") != std::string::npos);
    CHECK(dot.find("7/3") != std::string::npos);
    auto tree = io::to_dot(families::caterpillar_tree(2), "T");
    CHECK(tree.find("graph T {") == 0);
    CHECK(tree.find("shape=point") != std::string::npos);
}

TEST_CASE("files") {
    std::string path = "tgw_io_test.json";
    io::write_text_file(path, "{\"a\": [1, 2]}");
    CHECK(io::read_json_file(path)["a"][1] == 2);
    io::write_text_file(path, "{not json");
    CHECK(kind_of([&] { io::read_json_file(path); }) == ErrorKind::ParseError);
    std::remove(path.c_str());
    CHECK(kind_of([&] { io::read_json_file("no/such/file.json"); }) == ErrorKind::UsageError);
}
