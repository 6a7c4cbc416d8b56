#include "doctest.h"

#include "tgw/enumeration.hpp"
#include "tgw/error.hpp"
#include "tgw/io.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

using namespace tgw;

namespace {

using Dirs = std::array<std::optional<Partition>, 3>;

// Trivalent tree from internal edges and the vertex of each mark (1-based marks in order).
DiscreteGraph tree(int vertices, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& legAt) {
    std::vector<int> root, inv, marking;
    for (int v = 0; v < vertices; ++v) {
        root.push_back(v);
        inv.push_back(v);
    }
    for (auto [a, b] : edges) {
        int f = static_cast<int>(root.size());
        root.push_back(a);
        root.push_back(b);
        inv.push_back(f + 1);
        inv.push_back(f);
    }
    for (int v : legAt) {
        int f = static_cast<int>(root.size());
        root.push_back(v);
        inv.push_back(f);
        marking.push_back(f);
    }
    return DiscreteGraph(root, inv, marking);
}

Partition sorted_concat(const std::vector<LocalBlock>& blocks, int dir) {
    Partition p;
    for (const auto& b : blocks) p.insert(p.end(), b.parts[dir].begin(), b.parts[dir].end());
    std::sort(p.rbegin(), p.rend());
    return p;
}

// Every block multiset over a tripod with the given direction profiles, built from scratch.
std::set<LocalCover> brute_local_covers(int d, const std::array<Partition, 3>& dirs) {
    std::vector<LocalBlock> blocks;
    for (int k = 1; k <= d; ++k)
        for (const auto& a : partitions_of(k))
            for (const auto& b : partitions_of(k))
                for (const auto& c : partitions_of(k)) {
                    if (static_cast<int>(a.size() + b.size() + c.size()) != k + 2) continue;
                    if (hurwitz_genus0(k, {a, b, c}) == 0) continue;
                    blocks.push_back({k, {a, b, c}});
                }
    std::sort(blocks.begin(), blocks.end());
    std::set<LocalCover> out;
    std::vector<LocalBlock> chosen;
    std::function<void(std::size_t, int)> rec = [&](std::size_t from, int left) {
        if (left == 0) {
            bool ok = true;
            for (int i = 0; i < 3; ++i) ok = ok && sorted_concat(chosen, i) == dirs[i];
            if (ok) out.insert(chosen);
            return;
        }
        for (std::size_t i = from; i < blocks.size(); ++i) {
            if (blocks[i].degree > left) continue;
            chosen.push_back(blocks[i]);
            rec(i, left - blocks[i].degree);
            chosen.pop_back();
        }
    };
    rec(0, d);
    return out;
}

const EnumerationResult& quotient(int g) {
    static const EnumerationResult r2 = enumerate_all(2, EnumerationMode::Quotient);
    static const EnumerationResult r3 = enumerate_all(3, EnumerationMode::Quotient);
    return g == 2 ? r2 : r3;
}

// Aggregate weight times |det| per stable source class, orbit-weighted.
std::map<std::string, Rational> aggregate(const EnumerationResult& r) {
    std::map<std::string, Rational> out;
    for (const auto& rec : r.covers) {
        if (!rec.contributing) continue;
        std::string key = is_loops_on_caterpillar(rec.core->graph, r.genus) ? "O" : "other";
        out[key] += Rational(rec.orbitSize) / Rational(rec.legFixingOrder) * rec.weight.weight * abs(rec.det);
    }
    return out;
}

}  // namespace

TEST_CASE("local covers: small examples") {
    auto a = local_covers(2, {Partition{2}, Partition{2}, Partition{1, 1}});
    REQUIRE(a.size() == 1);
    CHECK(a[0].size() == 1);
    CHECK(a[0][0].degree == 2);

    auto b = local_covers(2, {Partition{1, 1}, Partition{1, 1}, Partition{1, 1}});
    REQUIRE(!b.empty());
    for (const auto& lc : b) {
        REQUIRE(lc.size() == 2);
        for (const auto& blk : lc) CHECK(blk.degree == 1);
    }

    for (int g = 2; g <= 5; ++g) {
        auto cs = local_covers(g, {Partition{g}, std::nullopt, std::nullopt});
        REQUIRE(!cs.empty());
        for (const auto& lc : cs) {
            REQUIRE(lc.size() == 1);
            CHECK(lc[0].degree == g);
        }
    }

    CHECK_THROWS_AS(local_covers(3, {Partition{2}, std::nullopt, std::nullopt}), Error);
    try {
        local_covers(3, {Partition{2}, std::nullopt, std::nullopt});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ProfileSumMismatch);
    }
}

TEST_CASE("local covers: complete against brute force") {
    for (int d = 1; d <= 4; ++d) {
        auto parts = partitions_of(d);
        for (const auto& x : parts)
            for (const auto& y : parts)
                for (const auto& z : parts) {
                    auto got = local_covers(d, {x, y, z});
                    std::set<LocalCover> gotSet(got.begin(), got.end());
                    CHECK(gotSet.size() == got.size());
                    CHECK(gotSet == brute_local_covers(d, {x, y, z}));
                    for (const auto& lc : got) {
                        int deg = 0;
                        for (const auto& blk : lc) {
                            deg += blk.degree;
                            int len = 0;
                            for (const auto& p : blk.parts) {
                                CHECK(sum_of(p) == blk.degree);
                                len += static_cast<int>(p.size());
                            }
                            CHECK(len == blk.degree + 2);
                        }
                        CHECK(deg == d);
                    }
                }
        // a free direction is the union over its possible partitions
        for (const auto& x : parts) {
            std::set<LocalCover> all;
            for (const auto& y : parts)
                for (const auto& z : parts)
                    for (const auto& lc : local_covers(d, {x, y, z})) all.insert(lc);
            auto freeCovers = local_covers(d, {x, std::nullopt, std::nullopt});
            CHECK(std::set<LocalCover>(freeCovers.begin(), freeCovers.end()) == all);
        }
    }
}

TEST_CASE("Weierstrass profile") {
    CHECK(weierstrass_profile(3, 1) == Partition{3});
    CHECK(weierstrass_profile(3, 2) == Partition{2, 1});
    CHECK(weierstrass_profile(4, 7) == Partition{2, 1, 1});
}

TEST_CASE("covers over a single tree") {
    // caterpillar with legs 1 and 3 at one end
    auto t = tree(4, {{0, 1}, {1, 2}, {2, 3}}, {0, 1, 0, 2, 3, 3});
    auto cs = covers_over_tree(t, 2);
    REQUIRE(!cs.empty());
    for (const auto& c : cs) {
        validate_cover(c);
        CHECK(riemann_hurwitz_global(c) == 0);
        for (auto [v, r] : riemann_hurwitz_residuals(c)) CHECK(r == 0);
        CHECK(c.source.genus() == 2);
        CHECK(c.source.is_connected());
    }

    // leg 1 shares its vertex with leg 2: one vertex of degree g over it
    for (int g = 2; g <= 3; ++g) {
        std::vector<int> legAt{0, 0};
        std::vector<std::pair<int, int>> edges;
        int m = 3 * g, internal = m - 2;
        for (int v = 0; v + 1 < internal; ++v) edges.push_back({v, v + 1});
        for (int k = 2; k < m - 2; ++k) legAt.push_back(k - 1);
        legAt.push_back(internal - 1);
        legAt.push_back(internal - 1);
        auto ct = tree(internal, edges, legAt);
        for (const auto& c : covers_over_tree(ct, g)) {
            int over = c.target.root(c.target.marking()[0]);
            std::vector<int> fiber;
            for (int v : c.source.vertices())
                if (c.flagMap[v] == over) fiber.push_back(c.degree[v]);
            CHECK(fiber == std::vector<int>{g});
        }
    }

    auto bad = tree(2, {{0, 1}}, {0, 0, 1, 1});
    try {
        covers_over_tree(bad, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::WrongProfile);
    }
    auto notTree = tree(3, {{0, 1}, {1, 2}, {2, 0}}, {0, 1, 2});
    try {
        covers_over_tree(notTree, 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotTrivalent);
    }
}

TEST_CASE("every tree carries a cover") {
    // partial fibers dead-end inside the search, but no whole tree comes back empty for g <= 3
    for (int g = 2; g <= 3; ++g)
        for (const auto& te : enumerate_trivalent_trees(3 * g, TreeMode::Interchangeable)) {
            CAPTURE(g);
            CHECK(!covers_over_tree(te.tree, g).empty());
        }
}

TEST_CASE("every enumerated cover has the expected shape") {
    for (int g = 2; g <= 3; ++g) {
        const auto& r = quotient(g);
        REQUIRE(!r.covers.empty());
        const int n = 1 + (3 * g - 1) * (g - 1);
        for (const auto& rec : r.covers) {
            const auto& c = rec.cover;
            validate_cover(c);
            require_weierstrass_profile(c);
            CHECK(c.source.genus() == g);
            CHECK(c.source.is_connected());
            CHECK(static_cast<int>(c.source.legs().size()) == n);
            CHECK(riemann_hurwitz_global(c) == 0);
            CHECK(rec.orbitSize > 0);
            if (rec.contributing) {
                CHECK(rec.core->graph.is_trivalent());
                CHECK(static_cast<int>(rec.core->graph.edges().size()) == 3 * g - 3);
                CHECK(rec.det != 0);
            }
        }
    }
}

TEST_CASE("quotient and labelled modes agree at genus 2") {
    auto lab = enumerate_all(2, EnumerationMode::Labelled);
    const auto& quo = quotient(2);
    Integer orbits = 0;
    for (const auto& rec : quo.covers) orbits += rec.orbitSize;
    Integer labelled = 0;
    for (const auto& rec : lab.covers) labelled += rec.orbitSize;
    CHECK(orbits == labelled);
    CHECK(aggregate(lab) == aggregate(quo));
    CHECK(aggregate(quo).size() == 2);

    Integer trees = 0;
    for (const auto& te : quo.trees) trees += te.orbitSize;
    CHECK(trees == static_cast<long>(lab.trees.size()));
    CHECK(lab.trees.size() == 105);
}

TEST_CASE("enumeration is reproducible") {
    auto again = enumerate_all(2, EnumerationMode::Quotient);
    CHECK(io::to_json(again).dump() == io::to_json(quotient(2)).dump());
    EnumerationOptions opt;
    opt.contributingOnly = true;
    auto slim = enumerate_all(3, opt);
    std::size_t contributing = 0;
    for (const auto& rec : quotient(3).covers) contributing += rec.contributing;
    CHECK(slim.covers.size() == contributing);
    for (const auto& rec : slim.covers) CHECK(rec.contributing);
}

TEST_CASE("genus limits") {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::UsageError;
    };
    CHECK(kind([] { enumerate_all(5, EnumerationMode::Quotient); }) == ErrorKind::GenusCapExceeded);
    CHECK(kind([] { enumerate_all(4, EnumerationMode::Labelled); }) == ErrorKind::GenusCapExceeded);
    CHECK(kind([] { enumerate_all(1, EnumerationMode::Quotient); }) == ErrorKind::GenusTooSmall);
}

TEST_CASE("structure of contributing covers") {
    for (int g = 2; g <= 3; ++g) {
        int og = 0, nonContributingPairs = 0;
        std::set<LoopCase> seen;
        for (const auto& rec : quotient(g).covers) {
            if (!rec.contributing) {
                nonContributingPairs += !check_leg_pair_fibers(rec.cover).empty();
                continue;
            }
            const auto& st = *rec.core;
            CHECK(check_leg_pair_fibers(rec.cover) == "");
            CHECK(check_expunged(rec.cover, st) == "");
            CHECK(check_loop_vertices(rec.cover, st) == "");
            for (auto [a, b] : st.graph.edges())
                if (st.graph.root(a) == st.graph.root(b)) seen.insert(classify_loop_vertex(rec.cover, st, st.graph.root(a)));
            if (is_loops_on_caterpillar(st.graph, g)) {
                ++og;
                CHECK(check_loop_weights(rec.cover, st) == "");
            } else {
                CHECK(check_loop_weights(rec.cover, st) == "stable source is not O_g");
            }
        }
        CAPTURE(g);
        CHECK(og > 0);
        CHECK(seen.count(LoopCase::None) == 0);
        if (g == 3) {
            // the two-leg fiber rule needs the invertibility that only contributing covers have
            CHECK(nonContributingPairs > 0);
            CHECK(seen.size() == 3);
        }
    }
}

TEST_CASE("checks reject tampered covers") {
    for (const auto& rec : quotient(3).covers) {
        if (!rec.contributing || !is_loops_on_caterpillar(rec.core->graph, 3)) continue;
        const auto& st = *rec.core;
        // a bridge edge made heavier
        Cover c = rec.cover;
        for (std::size_t e = 0; e < st.graph.edges().size(); ++e) {
            auto [a, b] = st.graph.edges()[e];
            if (st.graph.root(a) == st.graph.root(b)) continue;
            for (int h : st.paths[e]) {
                c.degree[h] += 1;
                c.degree[c.source.involution(h)] += 1;
            }
            break;
        }
        CHECK(check_loop_weights(c, st) != "");
        // an expunged edge of weight 2
        if (!st.expunged.empty()) {
            Cover d = rec.cover;
            auto [a, b] = d.source.edges()[st.expunged.front()];
            d.degree[a] = d.degree[b] = 2;
            CHECK(check_expunged(d, st) != "");
        }
    }
}
