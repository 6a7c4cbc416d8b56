#include "doctest.h"

#include "tgw/cover.hpp"
#include "tgw/enumeration.hpp"
#include "tgw/error.hpp"
#include "tgw/hurwitz.hpp"

#include <random>

using namespace tgw;

namespace {

ErrorKind kind_of(const Cover& c) {
    try {
        validate_cover(c);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("cover validated unexpectedly");
    return ErrorKind::UsageError;
}

// Tripod target: vertex 0, legs 1 2 3.
DiscreteGraph tripod() { return DiscreteGraph({0, 0, 0, 0}, {0, 1, 2, 3}, {1, 2, 3}); }

// Degree 2 over the tripod: one vertex, legs of degree 2 over legs 1 and 2, two simple legs over leg 3.
Cover double_tripod() {
    Cover c;
    c.target = tripod();
    c.source = DiscreteGraph({0, 0, 0, 0, 0}, {0, 1, 2, 3, 4});
    c.flagMap = {0, 1, 2, 3, 3};
    c.degree = {2, 2, 2, 1, 1};
    return c;
}

// Two target vertices a (legs L1 L2) and b (legs L3 L4) joined by an edge; degree 3.
// Over a: V1 of degree 2 and V2 of degree 1; over b: W of degree 3. Edge fiber degrees (2,1).
Cover split_edge() {
    Cover c;
    c.target = DiscreteGraph({0, 0, 0, 0, 4, 4, 4, 4}, {0, 1, 2, 5, 4, 3, 6, 7}, {1, 2, 6, 7});
    std::vector<int> root{0, 0, 0, 0, 0, 5, 5, 5, 5, 9, 9, 9, 9, 9, 9};
    std::vector<int> inv{0, 1, 2, 3, 10, 5, 6, 7, 11, 9, 4, 8, 12, 13, 14};
    c.source = DiscreteGraph(root, inv);
    c.flagMap = {0, 1, 2, 2, 3, 0, 1, 2, 3, 4, 5, 5, 6, 7, 7};
    c.degree = {2, 2, 1, 1, 2, 1, 1, 1, 1, 3, 2, 1, 3, 2, 1};
    return c;
}

Cover identity_cover(const DiscreteGraph& g) {
    Cover c;
    c.source = g;
    c.target = g;
    for (int f = 0; f < g.num_flags(); ++f) c.flagMap.push_back(f);
    c.degree.assign(g.num_flags(), 1);
    return c;
}

const EnumerationResult& genus2() {
    static const EnumerationResult r = enumerate_all(2, EnumerationMode::Quotient);
    return r;
}

}  // namespace

TEST_CASE("valid covers") {
    auto a = double_tripod();
    validate_cover(a);
    CHECK(a.global_degree() == 2);
    auto b = split_edge();
    validate_cover(b);
    CHECK(b.global_degree() == 3);
    auto id = identity_cover(families::caterpillar_tree(2));
    validate_cover(id);
    CHECK(id.global_degree() == 1);
    for (const auto& c : {a, b, id}) {
        CHECK(riemann_hurwitz_global(c) == 0);
        for (auto [v, r] : riemann_hurwitz_residuals(c)) CHECK(r == 0);
    }
}

TEST_CASE("genus 2 Weierstrass covers") {
    const auto& res = genus2();
    REQUIRE(!res.covers.empty());
    for (const auto& rec : res.covers) {
        const auto& c = rec.cover;
        validate_cover(c);
        require_weierstrass_profile(c);
        CHECK(c.global_degree() == 2);
        CHECK(c.source.legs().size() == 6);
        CHECK(c.target.legs().size() == 6);
        // #L + 2(g-1): 6 + 2 on the source, 6 - 2 on the target
        CHECK(riemann_hurwitz_global(c) == 0);
        CHECK(c.source.legs().size() + 2 * (c.source.genus() - 1) == 8);
    }
}

TEST_CASE("validation errors") {
    auto c = double_tripod();
    c.degree[3] = 2;
    CHECK(kind_of(c) == ErrorKind::NotHarmonic);

    c = split_edge();
    c.degree[4] = 1;
    CHECK(kind_of(c) == ErrorKind::NotHarmonic);

    c = split_edge();
    c.flagMap[4] = 0;
    CHECK(kind_of(c) == ErrorKind::MapContractsEdge);

    // all six source legs simple: harmonic, but the vertex has too many legs
    c.target = tripod();
    c.source = DiscreteGraph({0, 0, 0, 0, 0, 0, 0}, {0, 1, 2, 3, 4, 5, 6});
    c.flagMap = {0, 1, 1, 2, 2, 3, 3};
    c.degree = {2, 1, 1, 1, 1, 1, 1};
    CHECK(kind_of(c) == ErrorKind::RHNonzero);
    CHECK(ramification_divisor(c).degree() == 2);

    // target with two components, only one of them covered
    c = double_tripod();
    c.target = DiscreteGraph({0, 0, 0, 0, 4, 4, 4, 4}, {0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(kind_of(c) == ErrorKind::FiberDegreeMismatch);
}

TEST_CASE("edge matrices") {
    auto c = split_edge();
    auto F = f_matrix(c), I = i_matrix(c), L = lcm_matrix(c);
    REQUIRE(F.rows() == 2);
    REQUIRE(F.cols() == 1);
    CHECK(edge_lcm(c, 0) == 2);
    CHECK(F(0, 0) == 1);
    CHECK(F(1, 0) == 2);
    CHECK(I(0, 0) == Rational(1, 2));
    CHECK(I(1, 0) == 1);
    CHECK(L(0, 0) == 2);
    CHECK(F == I * L);

    auto id = identity_cover(families::caterpillar_tree(3));
    CHECK(f_matrix(id) == RationalMatrix::Identity(id.target.edges().size(), id.target.edges().size()));
    CHECK(i_matrix(id) == f_matrix(id));

    for (const auto& rec : genus2().covers) {
        auto f = f_matrix(rec.cover);
        CHECK(f == i_matrix(rec.cover) * lcm_matrix(rec.cover));
        for (Eigen::Index r = 0; r < f.rows(); ++r)
            for (Eigen::Index t = 0; t < f.cols(); ++t) CHECK(is_integer(f(r, t)));
    }
}

TEST_CASE("induced source lengths") {
    auto c = split_edge();
    auto src = source_lengths(c, {Rational(1)});
    CHECK(src[0] == Rational(1, 2));
    CHECK(src[1] == 1);
    for (const auto& rec : genus2().covers) {
        std::vector<Rational> delta(rec.cover.target.edges().size(), Rational(1));
        auto l = source_lengths(rec.cover, delta);
        const auto& se = rec.cover.source.edges();
        for (std::size_t e = 0; e < se.size(); ++e) {
            CHECK(l[e] > 0);
            // loops double-cover a target edge
            if (rec.cover.source.root(se[e].first) == rec.cover.source.root(se[e].second)) CHECK(l[e] == Rational(1, 2));
        }
    }
}

TEST_CASE("weights") {
    auto a = double_tripod();
    CHECK(local_hurwitz_number(a, 0) == Rational(1, 2));
    CHECK(cf_factor(a, 0) == 2);
    CHECK(standard_weight(a).weight == 1);

    auto b = split_edge();
    auto w = standard_weight(b);
    REQUIRE(w.perVertex.size() == 3);
    CHECK(w.perVertex[0].hurwitz == Rational(1, 2));
    CHECK(w.perVertex[0].cf == 2);
    CHECK(w.perVertex[1].hurwitz == 1);
    CHECK(w.perVertex[2].hurwitz == 1);
    CHECK(w.perVertex[2].cf == 1);
    CHECK(w.edgeProduct == 2);
    CHECK(w.lcmDenominator == 2);
    CHECK(w.weight == 1);

    for (int g = 2; g <= 3; ++g) {
        auto res = enumerate_all(g, EnumerationMode::Quotient);
        for (const auto& rec : res.covers) {
            const auto& r = rec.weight;
            Rational prod = Rational(r.edgeProduct);
            for (const auto& v : r.perVertex) prod *= v.hurwitz * Rational(v.cf);
            CHECK(r.weight * Rational(r.lcmDenominator) == prod);
        }
    }
}

TEST_CASE("pullback and pushforward on a hand-built cover") {
    auto c = split_edge();
    MetricGraph target(c.target, {Rational(6)});
    MetricGraph source(c.source, source_lengths(c, target.lengths()));
    Divisor d;
    d.add(Point::along(target, 3, 2), 1);
    auto up = pullback(c, target, source, d);
    CHECK(up.degree() == 3);
    CHECK(up[Point::along(source, 4, 1)] == 2);
    CHECK(up[Point::along(source, 8, 2)] == 1);
    CHECK(pushforward(c, target, source, up) == d * 3);
    CHECK(pullback(c, target, source, Divisor{}) == Divisor{});

    Divisor y;
    y.add(Point::at_vertex(0), 2);
    Divisor x;
    x.add(Point::at_vertex(0), 2);
    CHECK(pushforward(c, target, source, y) == x);

    auto R = ramification_divisor(c);
    CHECK(R.is_effective());
    CHECK(R[Point::at_vertex(0)] == 1);
    CHECK(R[Point::at_vertex(5)] == 0);
    CHECK(R[Point::at_vertex(9)] == 3);
    CHECK(canonical_divisor(source) == pullback(c, target, source, canonical_divisor(target)) + R);
}

TEST_CASE("pullback and pushforward on genus 2 covers") {
    std::mt19937_64 rng(11);
    int checked = 0;
    for (const auto& rec : genus2().covers) {
        const auto& c = rec.cover;
        std::vector<Rational> lengths;
        for (std::size_t t = 0; t < c.target.edges().size(); ++t) lengths.emplace_back(1 + static_cast<int>(rng() % 3));
        MetricGraph target(c.target, lengths);
        MetricGraph source(c.source, source_lengths(c, lengths));

        auto R = ramification_divisor(c);
        CHECK(R.is_effective());
        CHECK(R.degree() == 6);
        CHECK(canonical_divisor(source) == pullback(c, target, source, canonical_divisor(target)) + R);

        // the heavy leg's root pulls back to a single point of degree 2
        int heavy = c.target.marking()[0];
        Divisor x;
        x.add(Point::at_vertex(c.target.root(heavy)), 1);
        auto up = pullback(c, target, source, x);
        CHECK(up.terms().size() == 1);
        CHECK(up.terms().begin()->second == 2);

        for (int trial = 0; trial < 7; ++trial, ++checked) {
            Divisor d;
            const auto& te = c.target.edges();
            for (int k = 0; k < 3; ++k) {
                int e = static_cast<int>(rng() % te.size());
                Rational off(1 + static_cast<int>(rng() % 5), 6);
                off *= lengths[e];
                d.add(Point::along(target, te[e].first, off), 1 + static_cast<long long>(rng() % 2));
            }
            d.add(Point::at_vertex(c.target.vertices()[rng() % c.target.vertices().size()]), 1);
            auto pd = pullback(c, target, source, d);
            CHECK(pd.degree() == 2 * d.degree());
            CHECK(pd.is_effective());
            CHECK(pushforward(c, target, source, pd) == d * 2);
            CHECK(pushforward(c, target, source, pd).degree() == pd.degree());
            if (trial < 2) {
                Divisor one;
                one.add(d.terms().begin()->first, 1);
                CHECK(rank(source, pullback(c, target, source, one)) >= rank(target, one));
                Divisor ys;
                ys.add(pd.terms().begin()->first, 1);
                CHECK(rank(target, pushforward(c, target, source, ys)) >= rank(source, ys));
            }
        }
    }
    CHECK(checked >= 20);
}
