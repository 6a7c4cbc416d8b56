#pragma once

// Independent oracles shared by the unit tests and the acceptance run.

#include "tgw/divisors.hpp"
#include "tgw/hurwitz.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace tgw::oracle {

using Perm = std::vector<int>;

// Independent brute force: every tuple of permutations, no memo, no class representatives.
inline Perm compose(const Perm& a, const Perm& b) {
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[x] = a[b[x]];
    return c;
}

inline Perm inverse(const Perm& a) {
    Perm c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<int>(x);
    return c;
}

inline Partition type_of(const Perm& p) {
    std::vector<bool> seen(p.size());
    std::vector<int> t;
    for (std::size_t i = 0; i < p.size(); ++i) {
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        if (len) t.push_back(len);
    }
    std::sort(t.rbegin(), t.rend());
    return t;
}

inline bool transitive(const std::vector<Perm>& gens, int d) {
    std::vector<int> comp(d);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
        while (comp[x] != x) x = comp[x] = comp[comp[x]];
        return x;
    };
    for (const auto& g : gens)
        for (int x = 0; x < d; ++x) comp[find(x)] = find(g[x]);
    for (int x = 0; x < d; ++x)
        if (find(x) != find(0)) return false;
    return true;
}

inline std::vector<Perm> all_perms(int d) {
    std::vector<Perm> out;
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// counts[(types...)] = number of transitive k-tuples with product identity and a genus-0 cover.
inline std::map<std::vector<Partition>, long long> brute_force(int d, int k) {
    auto perms = all_perms(d);
    std::map<std::vector<Partition>, long long> counts;
    std::vector<Perm> tuple(k);
    std::function<void(int, const Perm&)> rec = [&](int i, const Perm& prod) {
        if (i == k - 1) {
            tuple[i] = inverse(prod);
            if (!transitive(tuple, d)) return;
            std::vector<Partition> key;
            int branch = 0;
            for (const auto& s : tuple) {
                key.push_back(type_of(s));
                branch += d - static_cast<int>(key.back().size());
            }
            if (branch == 2 * d - 2) ++counts[key];
            return;
        }
        for (const auto& s : perms) {
            tuple[i] = s;
            rec(i + 1, compose(prod, s));
        }
    };
    Perm id(d);
    std::iota(id.begin(), id.end(), 0);
    rec(0, id);
    return counts;
}

inline Rational factorial(int n) {
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

struct RandomInstance {
    MetricGraph m;
    Divisor d;
};

inline RandomInstance random_instance(std::mt19937& rng, int maxGenus, int minDeg, int maxDegOffset) {
    for (;;) {
        int nv = 1 + static_cast<int>(rng() % 3);
        int genus = 1 + static_cast<int>(rng() % maxGenus);
        int ne = nv - 1 + genus;
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < nv; ++v) edges.emplace_back(static_cast<int>(rng() % v), v);
        while (static_cast<int>(edges.size()) < ne)
            edges.emplace_back(static_cast<int>(rng() % nv), static_cast<int>(rng() % nv));
        auto g = families::from_edge_list(nv, edges);
        std::vector<Rational> lengths;
        for (int e = 0; e < ne; ++e) lengths.emplace_back(1 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 2));
        MetricGraph m(g, lengths);
        int g0 = m.genus();
        int deg = minDeg + static_cast<int>(rng() % (2 * g0 + maxDegOffset - minDeg + 1));
        Divisor d;
        int terms = 1 + static_cast<int>(rng() % 3);
        long long placed = 0;
        for (int t = 0; t < terms; ++t) {
            Point p;
            if (rng() % 2 == 0) {
                p = Point::at_vertex(g.vertices()[rng() % g.vertices().size()]);
            } else {
                int e = static_cast<int>(rng() % ne);
                p = Point::along(m, g.edges()[e].first, m.length(e) * Rational(1 + rng() % 3, 4));
            }
            long long c = t + 1 == terms ? deg - placed : static_cast<long long>(rng() % 5) - 2;
            d.add(p, c);
            placed += c;
        }
        return {m, d};
    }
}

}  // namespace tgw::oracle
