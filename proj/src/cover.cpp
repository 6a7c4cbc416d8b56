#include "tgw/cover.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tgw {

int Cover::global_degree() const {
    int t = target.vertices().front();
    int d = 0;
    for (int f = 0; f < source.num_flags(); ++f)
        if (flagMap[f] == t) d += degree[f];
    return d;
}

void validate_cover(const Cover& c) {
    const auto& s = c.source;
    const auto& t = c.target;
    const int n = s.num_flags();
    if (static_cast<int>(c.flagMap.size()) != n || static_cast<int>(c.degree.size()) != n)
        throw Error(ErrorKind::UnknownFlag, "flag map or degree map does not cover the source flags");
    for (int f = 0; f < n; ++f) {
        int p = c.flagMap[f];
        if (p < 0 || p >= t.num_flags())
            throw Error(ErrorKind::UnknownFlag, "source flag " + std::to_string(s.label(f)) + " maps outside the target");
        if (c.degree[f] <= 0)
            throw Error(ErrorKind::NonpositiveWeight, "source flag " + std::to_string(s.label(f)) + " has degree <= 0");
        bool typeOk = (s.is_vertex(f) && t.is_vertex(p)) || (s.is_leg(f) && t.is_leg(p)) ||
                      (s.is_edge_flag(f) && t.is_edge_flag(p));
        if (!typeOk)
            throw Error(ErrorKind::MapContractsEdge,
                        "source flag " + std::to_string(s.label(f)) + " changes type under the map");
        if (c.flagMap[s.root(f)] != t.root(p) || c.flagMap[s.involution(f)] != t.involution(p))
            throw Error(ErrorKind::MapContractsEdge,
                        "map does not commute with root/involution at flag " + std::to_string(s.label(f)));
        if (s.is_edge_flag(f) && c.degree[s.involution(f)] != c.degree[f])
            throw Error(ErrorKind::NotHarmonic, "edge halves carry different degrees at " + std::to_string(s.label(f)));
        if (s.is_leg(f) && s.has_leg_weights() && s.leg_weight(f) != c.degree[f])
            throw Error(ErrorKind::NotHarmonic, "leg weight differs from degree at " + std::to_string(s.label(f)));
    }
    for (int v : s.vertices()) {
        std::map<int, int> sums;
        for (int h : s.flags_at(v)) sums[c.flagMap[h]] += c.degree[h];
        for (int th : t.flags_at(c.flagMap[v]))
            if (sums[th] != c.degree[v])
                throw Error(ErrorKind::NotHarmonic, "vertex " + std::to_string(s.label(v)) + " is not harmonic over target flag " +
                                                        std::to_string(t.label(th)));
    }
    std::vector<int> fiber(t.num_flags(), 0);
    for (int f = 0; f < n; ++f) fiber[c.flagMap[f]] += c.degree[f];
    for (int p = 0; p < t.num_flags(); ++p)
        if (fiber[p] != fiber[0])
            throw Error(ErrorKind::FiberDegreeMismatch, "fiber over target flag " + std::to_string(t.label(p)) +
                                                            " has degree " + std::to_string(fiber[p]));
    for (auto [v, r] : riemann_hurwitz_residuals(c))
        if (r != 0)
            throw Error(ErrorKind::RHNonzero, "local Riemann-Hurwitz fails at vertex " + std::to_string(s.label(v)));
    if (!s.is_connected()) throw Error(ErrorKind::UsageError, "source graph is disconnected");
}

std::vector<std::pair<int, int>> riemann_hurwitz_residuals(const Cover& c) {
    std::vector<std::pair<int, int>> out;
    for (int v : c.source.vertices()) {
        int tv = c.flagMap[v];
        out.emplace_back(v, (c.source.valence(v) - 2) - c.degree[v] * (c.target.valence(tv) - 2));
    }
    return out;
}

int edge_lcm(const Cover& c, int targetEdge) {
    int l = 1;
    for (auto [a, b] : c.source.edges())
        if (c.target.edge_index(c.flagMap[a]) == targetEdge) l = std::lcm(l, c.degree[a]);
    return l;
}

namespace {

RationalMatrix edge_matrix(const Cover& c, bool withLcm) {
    const auto& se = c.source.edges();
    RationalMatrix m = RationalMatrix::Zero(se.size(), c.target.edges().size());
    std::vector<int> lcms(c.target.edges().size());
    for (std::size_t t = 0; t < lcms.size(); ++t) lcms[t] = edge_lcm(c, static_cast<int>(t));
    for (std::size_t e = 0; e < se.size(); ++e) {
        int t = c.target.edge_index(c.flagMap[se[e].first]);
        m(e, t) = Rational(withLcm ? lcms[t] : 1, c.degree[se[e].first]);
    }
    return m;
}

}  // namespace

RationalMatrix f_matrix(const Cover& c) { return edge_matrix(c, true); }

RationalMatrix i_matrix(const Cover& c) { return edge_matrix(c, false); }

RationalMatrix lcm_matrix(const Cover& c) {
    const int k = static_cast<int>(c.target.edges().size());
    RationalMatrix m = RationalMatrix::Zero(k, k);
    for (int t = 0; t < k; ++t) m(t, t) = edge_lcm(c, t);
    return m;
}

std::vector<Rational> source_lengths(const Cover& c, const std::vector<Rational>& targetLengths) {
    std::vector<Rational> out;
    for (auto [a, b] : c.source.edges())
        out.push_back(targetLengths.at(c.target.edge_index(c.flagMap[a])) / c.degree[a]);
    return out;
}

Divisor pullback(const Cover& c, const MetricGraph& target, const MetricGraph& source, const Divisor& d) {
    Divisor out;
    for (const auto& [p, k] : d.terms()) {
        if (p.is_vertex()) {
            for (int v : c.source.vertices())
                if (c.flagMap[v] == p.vertex) out.add(Point::at_vertex(v), k * c.degree[v]);
            continue;
        }
        int tf = target.graph().edges()[p.edge].first;
        for (int h = 0; h < c.source.num_flags(); ++h)
            if (c.source.is_edge_flag(h) && c.flagMap[h] == tf)
                out.add(Point::along(source, h, p.offset / c.degree[h]), k * c.degree[h]);
    }
    return out;
}

Divisor pushforward(const Cover& c, const MetricGraph& target, const MetricGraph& source, const Divisor& d) {
    Divisor out;
    for (const auto& [p, k] : d.terms()) {
        if (p.is_vertex()) {
            out.add(Point::at_vertex(c.flagMap[p.vertex]), k);
            continue;
        }
        int h = source.graph().edges()[p.edge].first;
        out.add(Point::along(target, c.flagMap[h], p.offset * c.degree[h]), k);
    }
    return out;
}

Divisor ramification_divisor(const Cover& c) {
    Divisor r;
    for (int v : c.source.vertices()) {
        int tv = c.flagMap[v];
        int src = c.source.valence(v) - c.source.leg_valence(v) - 2;
        int tgt = c.target.valence(tv) - c.target.leg_valence(tv) - 2;
        r.add(Point::at_vertex(v), src - c.degree[v] * tgt);
    }
    return r;
}

int riemann_hurwitz_global(const Cover& c) {
    auto euler = [](const DiscreteGraph& g) { return static_cast<int>(g.legs().size()) + 2 * (g.genus() - 1); };
    int total = euler(c.source) - c.global_degree() * euler(c.target);
    for (auto [v, r] : riemann_hurwitz_residuals(c)) total -= r;
    return total;
}

iso::Structure cover_structure(const Cover& c, const CoverStructureOptions& opt) {
    const int ns = c.source.num_flags();
    const int nt = c.target.num_flags();
    iso::Structure st;
    st.size = ns + nt;
    std::vector<int> root(st.size), inv(st.size), pi(st.size, -1);
    st.colors.resize(st.size);
    for (int f = 0; f < ns; ++f) {
        root[f] = c.source.root(f);
        inv[f] = c.source.involution(f);
        pi[f] = ns + c.flagMap[f];
        std::uint64_t col = c.source.is_vertex(f) ? 11 : c.source.is_leg(f) ? 12 : 13;
        st.colors[f] = iso::mix(col, static_cast<std::uint64_t>(c.degree[f]));
    }
    for (int f : opt.fixedSourceFlags) st.colors[f] = iso::mix(st.colors[f], 0x700000ULL + static_cast<std::uint64_t>(f));
    for (int f = 0; f < nt; ++f) {
        root[ns + f] = ns + c.target.root(f);
        inv[ns + f] = ns + c.target.involution(f);
        std::uint64_t col = c.target.is_vertex(f) ? 21 : c.target.is_leg(f) ? 22 : 23;
        if (opt.fixTarget) {
            col = iso::mix(col, 0x900000ULL + static_cast<std::uint64_t>(f));
        } else if (int m = c.target.mark_of(f); m > 0) {
            bool own = std::find(opt.distinguishedTargetMarks.begin(), opt.distinguishedTargetMarks.end(), m) !=
                       opt.distinguishedTargetMarks.end();
            col = iso::mix(col, own ? 0x800000ULL + static_cast<std::uint64_t>(m) : 0x7fffffULL);
        }
        st.colors[ns + f] = col;
    }
    st.maps = {std::move(root), std::move(inv), std::move(pi)};
    return st;
}

}  // namespace tgw
