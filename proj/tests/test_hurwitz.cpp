#include "doctest.h"

#include "tgw/error.hpp"
#include "tgw/hurwitz.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <thread>

using namespace tgw;
using namespace tgw::oracle;

namespace {

Partition hook(int i, int D) {
    Partition p{i};
    for (int r = 0; r < D - i; ++r) p.push_back(1);
    return p;
}

}  // namespace

TEST_CASE("closed cases") {
    for (int d = 1; d <= 8; ++d) CHECK(hurwitz_genus0(d, {{d}, {d}}) == Rational(1, d));
    CHECK(hurwitz_genus0(2, {{2}, {2}}) == Rational(1, 2));
    int near = 0;
    for (int D = 3; D <= 7; ++D)
        for (int i = 2; i <= D; ++i)
            for (int j = i; j <= D; ++j) {
                int k = 2 * D + 1 - i - j;
                if (k < j || k > D) continue;
                CHECK(hurwitz_genus0(D, {hook(i, D), hook(j, D), hook(k, D)}) == 1);
                ++near;
            }
    CHECK(near > 5);
    // a transposition and a permutation of type (i, j) whose product is a full cycle
    for (int D = 2; D <= 8; ++D)
        for (int i = 1; 2 * i <= D; ++i) {
            int j = D - i;
            Rational expect = i == j ? Rational(1, 2) : Rational(1);
            CHECK(hurwitz_genus0(D, {hook(2, D), make_partition({i, j}), {D}}) == expect);
        }
}

TEST_CASE("matches brute force for three profiles up to degree 5") {
    for (int d = 1; d <= 5; ++d) {
        auto counts = brute_force(d, 3);
        auto parts = partitions_of(d);
        for (const auto& a : parts)
            for (const auto& b : parts)
                for (const auto& c : parts) {
                    auto it = counts.find({a, b, c});
                    Rational expect = it == counts.end() ? Rational(0) : Rational(it->second) / factorial(d);
                    CAPTURE(d);
                    CAPTURE(to_string(a) + to_string(b) + to_string(c));
                    CHECK(hurwitz_genus0(d, {a, b, c}) == expect);
                }
    }
}

TEST_CASE("matches brute force for four profiles up to degree 4") {
    for (int d = 1; d <= 4; ++d) {
        auto counts = brute_force(d, 4);
        auto parts = partitions_of(d);
        for (const auto& a : parts)
            for (const auto& b : parts)
                for (const auto& c : parts)
                    for (const auto& e : parts) {
                        auto it = counts.find({a, b, c, e});
                        Rational expect = it == counts.end() ? Rational(0) : Rational(it->second) / factorial(d);
                        CHECK(hurwitz_genus0(d, {a, b, c, e}) == expect);
                    }
    }
}

TEST_CASE("invariance, integrality and the vanishing criterion") {
    for (int d = 1; d <= 6; ++d) {
        auto parts = partitions_of(d);
        for (const auto& a : parts)
            for (const auto& b : parts)
                for (const auto& c : parts) {
                    Rational h = hurwitz_genus0(d, {a, b, c});
                    CHECK(h >= 0);
                    CHECK(is_integer(h * factorial(d)));
                    CHECK(hurwitz_genus0(d, {c, a, b}) == h);
                    CHECK(hurwitz_genus0(d, {b, a, c}) == h);
                    int branch = 3 * d - static_cast<int>(a.size() + b.size() + c.size());
                    if (branch != 2 * d - 2) CHECK(h == 0);
                }
    }
}

TEST_CASE("errors, cap and memo") {
    CHECK_THROWS_AS(hurwitz_genus0(3, {{2, 1}, {2}}), Error);
    try {
        hurwitz_genus0(3, {{2, 1}, {2}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ProfileSumMismatch);
    }
    try {
        hurwitz_genus0(9, {{9}, {9}});
        FAIL("expected a cap error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GenusCapExceeded);
    }
    clear_hurwitz_cache();
    CHECK(hurwitz_cache_size() == 0);
    Rational a = hurwitz_genus0(4, {{2, 1, 1}, {3, 1}, {4}});
    std::size_t n = hurwitz_cache_size();
    CHECK(n == 1);
    CHECK(hurwitz_genus0(4, {{4}, {3, 1}, {2, 1, 1}}) == a);
    CHECK(hurwitz_cache_size() == n);
}

TEST_CASE("concurrent callers agree") {
    clear_hurwitz_cache();
    std::vector<std::vector<Partition>> inputs;
    for (int d = 3; d <= 6; ++d) {
        auto parts = partitions_of(d);
        for (const auto& a : parts)
            for (const auto& b : parts) inputs.push_back({a, b, {d}});
    }
    std::vector<Rational> serial;
    for (const auto& in : inputs) serial.push_back(hurwitz_genus0(sum_of(in[0]), in));
    clear_hurwitz_cache();
    std::vector<std::vector<Rational>> results(4, std::vector<Rational>(inputs.size()));
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = 0; i < inputs.size(); ++i) {
                std::size_t k = (i * 7 + t * 3) % inputs.size();
                results[t][k] = hurwitz_genus0(sum_of(inputs[k][0]), inputs[k]);
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& r : results) CHECK(r == serial);
}

TEST_CASE("partition parsing") {
    CHECK(parse_partition("(2,1,1)") == Partition{2, 1, 1});
    CHECK(parse_partition("(1,3)") == Partition{3, 1});
    auto ps = parse_profiles("(2,1,1);(2,1,1);(4)");
    REQUIRE(ps.size() == 3);
    CHECK(ps[2] == Partition{4});
    CHECK(to_string(Partition{2, 1}) == "(2,1)");
    CHECK(partitions_of(5).size() == 7);
    CHECK(partitions_of(8).size() == 22);
    CHECK_THROWS_AS(parse_partition("(2,x)"), Error);
}
