#include "tgw/enumeration.hpp"

#include <algorithm>
#include <set>

namespace tgw {

namespace {

int genus_of(const Cover& c) { return c.global_degree(); }

std::vector<int> fiber_vertices(const Cover& c, int t) {
    std::vector<int> out;
    for (int v : c.source.vertices())
        if (c.flagMap[v] == t) out.push_back(v);
    return out;
}

// Weights of the source edges over target edge te (by index), descending.
Partition edge_profile(const Cover& c, int te) {
    Partition p;
    for (auto [a, b] : c.source.edges())
        if (c.target.edge_index(c.flagMap[a]) == te) p.push_back(c.degree[a]);
    std::sort(p.rbegin(), p.rend());
    return p;
}

Partition hook(int w, int g) {
    Partition p{w};
    for (int i = w; i < g; ++i) p.push_back(1);
    return p;
}

int leg1(const Cover& c) { return c.target.marking().at(0); }

std::string str(const Partition& p) { return to_string(p); }

}  // namespace

std::string check_leg_pair_fibers(const Cover& c) {
    const int g = genus_of(c);
    for (int t : c.target.vertices()) {
        if (c.target.leg_valence(t) != 2) continue;
        bool heavy = c.target.root(leg1(c)) == t;
        std::vector<int> degs;
        for (int v : fiber_vertices(c, t)) degs.push_back(c.degree[v]);
        std::sort(degs.rbegin(), degs.rend());
        if (heavy) {
            if (degs != std::vector<int>{g}) return "fiber over the vertex of leg 1 is not one vertex of degree g";
        } else {
            if (degs.empty() || degs[0] != 2 || (degs.size() > 1 && degs[1] != 1))
                return "fiber over a two-leg vertex is not one vertex of degree 2 plus simple vertices";
        }
    }
    return {};
}

std::string check_expunged(const Cover& c, const Stabilization& st) {
    std::set<int> kept;
    for (int v : c.source.vertices())
        if (st.location[v].stableVertex >= 0) kept.insert(v);
    for (const auto& p : st.paths)
        for (int h : p) {
            kept.insert(c.source.root(h));
            kept.insert(c.source.other_end(h));
        }
    for (int v : c.source.vertices())
        if (!kept.count(v) && c.degree[v] != 1)
            return "expunged vertex " + std::to_string(c.source.label(v)) + " has degree " + std::to_string(c.degree[v]);
    for (int e : st.expunged) {
        int h = c.source.edges()[e].first;
        if (c.degree[h] != 1)
            return "expunged edge " + std::to_string(c.source.label(h)) + " has weight " + std::to_string(c.degree[h]);
    }
    return {};
}

LoopCase classify_loop_vertex(const Cover& c, const Stabilization& st, int stableVertex) {
    const int g = genus_of(c);
    const DiscreteGraph& T = c.target;
    int v = st.origin[stableVertex];
    int t = c.flagMap[v];
    if (T.valence(t) != 3 || T.leg_valence(t) != 1) return LoopCase::None;
    std::vector<int> halves;
    for (int h : T.flags_at(t))
        if (T.is_edge_flag(h)) halves.push_back(h);
    int e1 = -1, e2 = -1;
    for (int h : halves) {
        if (T.leg_valence(T.other_end(h)) == 2) {
            if (e1 >= 0) return LoopCase::None;
            e1 = h;
        } else {
            e2 = h;
        }
    }
    if (e1 < 0 || e2 < 0) return LoopCase::None;
    int w = T.other_end(e1);
    int heavyAt = T.root(leg1(c));
    Partition p1 = edge_profile(c, T.edge_index(e1)), p2 = edge_profile(c, T.edge_index(e2));
    Partition ones = hook(1, g);
    if (heavyAt == w) {
        if (p1.size() == 2 && p1[0] + p1[1] == g && p2 == Partition{g}) return LoopCase::A;
    } else if (heavyAt == t) {
        if (p1 == ones && p2 == Partition{g}) return LoopCase::B;
    } else {
        if (p1 == ones && p2 == hook(2, g)) return LoopCase::C;
    }
    return LoopCase::None;
}

std::string check_loop_vertices(const Cover& c, const Stabilization& st) {
    const DiscreteGraph& S = st.graph;
    for (auto [a, b] : S.edges()) {
        if (S.root(a) != S.root(b)) continue;
        if (classify_loop_vertex(c, st, S.root(a)) == LoopCase::None)
            return "loop vertex over target vertex " + std::to_string(c.target.label(c.flagMap[st.origin[S.root(a)]])) +
                   " matches no case";
    }
    return {};
}

bool is_loops_on_caterpillar(const DiscreteGraph& stable, int g) {
    if (stable.genus() != g || !stable.is_trivalent()) return false;
    return !find_isomorphisms(stable, families::loops_on_caterpillar(g)).empty();
}

std::string check_loop_weights(const Cover& c, const Stabilization& st) {
    const int g = genus_of(c);
    const DiscreteGraph& S = st.graph;
    if (!is_loops_on_caterpillar(S, g)) return "stable source is not O_g";

    auto is_loop = [&](int e) { return S.root(S.edges()[e].first) == S.root(S.edges()[e].second); };
    std::vector<char> loopVertex(S.num_flags(), 0);
    for (std::size_t e = 0; e < S.edges().size(); ++e)
        if (is_loop(static_cast<int>(e))) loopVertex[S.root(S.edges()[e].first)] = 1;

    // weight of a non-loop stable edge: constant along its path
    std::vector<int> weight(S.edges().size(), 0);
    for (std::size_t e = 0; e < S.edges().size(); ++e) {
        if (is_loop(static_cast<int>(e))) continue;
        const auto& path = st.paths[e];
        weight[e] = c.degree[path.front()];
        for (int h : path)
            if (c.degree[h] != weight[e]) return "weight changes along a stable edge";
        for (int h : path) {
            Partition p = edge_profile(c, c.target.edge_index(c.flagMap[h]));
            if (p != hook(weight[e], g)) return "edge over a profile " + str(p) + " other than (w,1,...,1)";
        }
    }

    std::vector<int> bridges;
    for (std::size_t e = 0; e < S.edges().size(); ++e) {
        if (is_loop(static_cast<int>(e))) continue;
        auto [a, b] = S.edges()[e];
        if (loopVertex[S.root(a)] || loopVertex[S.root(b)]) bridges.push_back(static_cast<int>(e));
    }
    int heavy = -1;
    for (int e : bridges) {
        if (weight[e] == g && heavy < 0) heavy = e;
        else if (weight[e] != 2) return "bridge of weight " + std::to_string(weight[e]);
    }
    if (heavy < 0) return "no bridge of weight g";

    for (int e : bridges) {
        for (int h : {S.edges()[e].first, S.edges()[e].second}) {
            int w = S.root(h);
            if (loopVertex[w]) continue;
            std::vector<int> others;
            for (int x : S.flags_at(w))
                if (S.edge_index(x) != e) others.push_back(weight[S.edge_index(x)]);
            if (others.size() != 2) return "spine vertex is not trivalent";
            if (e == heavy && others[0] + others[1] != g + 1) return "weights at the heavy bridge do not sum to g+1";
            if (e != heavy && std::abs(others[0] - others[1]) != 1) return "weights at a light bridge differ by more than 1";
        }
    }

    for (std::size_t e = 0; e < S.edges().size(); ++e) {
        if (!is_loop(static_cast<int>(e))) continue;
        int v = S.root(S.edges()[e].first);
        bool onHeavy = S.root(S.edges()[heavy].first) == v || S.root(S.edges()[heavy].second) == v;
        std::vector<int> ws;
        for (int h : st.paths[e]) ws.push_back(c.degree[h]);
        bool simple = std::all_of(ws.begin(), ws.end(), [](int x) { return x == 1; });
        bool split = onHeavy && ws.size() == 2 && ws[0] + ws[1] == g;
        if (!simple && !split) return "loop weights do not match the bridge";
    }
    return {};
}

}  // namespace tgw
