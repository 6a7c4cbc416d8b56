#include "tgw/structure.hpp"

#include <algorithm>
#include <unordered_map>

namespace tgw::iso {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kUndefined = 0x5ca1ab1e0ddba11ULL;
constexpr std::uint64_t kIndividual = 0x1d1d1d1d2e2e2e2eULL;

using Colors = std::vector<std::uint64_t>;

struct Prepared {
    const Structure* s;
    // preimages per map, CSR layout
    std::vector<std::vector<int>> off, idx;

    explicit Prepared(const Structure& st) : s(&st) {
        const int n = st.size;
        for (const auto& f : st.maps) {
            std::vector<int> o(n + 1, 0), ix(n);
            for (int x = 0; x < n; ++x)
                if (f[x] >= 0) ++o[f[x] + 1];
            for (int i = 0; i < n; ++i) o[i + 1] += o[i];
            std::vector<int> pos(o.begin(), o.end() - 1);
            int used = 0;
            for (int x = 0; x < n; ++x)
                if (f[x] >= 0) {
                    ix[pos[f[x]]++] = x;
                    ++used;
                }
            ix.resize(used);
            off.push_back(std::move(o));
            idx.push_back(std::move(ix));
        }
    }
};

int distinct(Colors c) {
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
}

Colors round(const Prepared& p, const Colors& c) {
    const Structure& s = *p.s;
    Colors next(s.size);
    std::vector<std::uint64_t> buf;
    for (int x = 0; x < s.size; ++x) {
        std::uint64_t h = mix(0x2545f4914f6cdd1dULL, c[x]);
        for (const auto& f : s.maps) h = mix(h, f[x] < 0 ? kUndefined : c[f[x]]);
        for (std::size_t k = 0; k < s.maps.size(); ++k) {
            buf.clear();
            for (int i = p.off[k][x]; i < p.off[k][x + 1]; ++i) buf.push_back(c[p.idx[k][i]]);
            std::sort(buf.begin(), buf.end());
            h = mix(h, buf.size());
            for (auto v : buf) h = mix(h, v);
        }
        next[x] = h;
    }
    return next;
}

void refine(const Prepared& p, Colors& c) {
    int cells = distinct(c);
    for (;;) {
        Colors next = round(p, c);
        int nc = distinct(next);
        c = std::move(next);
        if (nc == cells) return;
        cells = nc;
    }
}

bool same_multiset(Colors a, Colors b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Refines both colorings in lockstep; false when they provably disagree.
bool refine_pair(const Prepared& pa, Colors& ca, const Prepared& pb, Colors& cb) {
    if (!same_multiset(ca, cb)) return false;
    int cells = distinct(ca);
    for (;;) {
        Colors na = round(pa, ca), nb = round(pb, cb);
        if (!same_multiset(na, nb)) return false;
        int nc = distinct(na);
        ca = std::move(na);
        cb = std::move(nb);
        if (nc == cells) return true;
        cells = nc;
    }
}

// Smallest non-singleton cell, ties broken by color value. Returns false if discrete.
bool target_cell(const Colors& c, std::uint64_t& color) {
    std::unordered_map<std::uint64_t, int> count;
    for (auto v : c) ++count[v];
    bool found = false;
    int best = 0;
    for (auto [v, k] : count) {
        if (k < 2) continue;
        if (!found || k < best || (k == best && v < color)) {
            found = true;
            best = k;
            color = v;
        }
    }
    return found;
}

bool search(const Prepared& pa, Colors ca, const Prepared& pb, Colors cb,
            const std::function<bool(const Mapping&)>& visit) {
    if (!refine_pair(pa, ca, pb, cb)) return true;
    std::uint64_t color = 0;
    if (!target_cell(ca, color)) {
        std::unordered_map<std::uint64_t, int> where;
        for (int y = 0; y < pb.s->size; ++y) where[cb[y]] = y;
        Mapping m(pa.s->size);
        for (int x = 0; x < pa.s->size; ++x) m[x] = where.at(ca[x]);
        if (is_isomorphism(*pa.s, *pb.s, m)) return visit(m);
        return true;
    }
    int x = static_cast<int>(std::find(ca.begin(), ca.end(), color) - ca.begin());
    Colors ca2 = ca;
    ca2[x] = mix(ca2[x], kIndividual);
    for (int y = 0; y < pb.s->size; ++y) {
        if (cb[y] != color) continue;
        Colors cb2 = cb;
        cb2[y] = mix(cb2[y], kIndividual);
        if (!search(pa, ca2, pb, cb2, visit)) return false;
    }
    return true;
}

std::optional<Mapping> find_with(const Prepared& pa, const Colors& ca, const Prepared& pb, const Colors& cb) {
    std::optional<Mapping> out;
    search(pa, ca, pb, cb, [&](const Mapping& m) {
        out = m;
        return false;
    });
    return out;
}

std::vector<int> closure(int start, const std::vector<Mapping>& gens) {
    std::vector<int> orbit{start};
    std::vector<char> seen;
    if (!gens.empty()) seen.assign(gens.front().size(), 0);
    else return orbit;
    seen[start] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& g : gens) {
            int y = g[orbit[i]];
            if (!seen[y]) {
                seen[y] = 1;
                orbit.push_back(y);
            }
        }
    return orbit;
}

Integer stabilizer_chain(const Prepared& p, Colors c, std::vector<Mapping>& gens) {
    refine(p, c);
    std::uint64_t color = 0;
    if (!target_cell(c, color)) return 1;
    int x = static_cast<int>(std::find(c.begin(), c.end(), color) - c.begin());
    Colors cx = c;
    cx[x] = mix(cx[x], kIndividual);
    Integer sub = stabilizer_chain(p, cx, gens);
    std::vector<int> orbit = closure(x, gens);
    std::vector<char> in(c.size(), 0);
    for (int y : orbit) in[y] = 1;
    for (int y = 0; y < p.s->size; ++y) {
        if (c[y] != color || in[y]) continue;
        Colors cy = c;
        cy[y] = mix(cy[y], kIndividual);
        if (auto m = find_with(p, cx, p, cy)) {
            gens.push_back(std::move(*m));
            orbit = closure(x, gens);
            for (int z : orbit) in[z] = 1;
        }
    }
    return sub * static_cast<long>(orbit.size());
}

}  // namespace

bool is_isomorphism(const Structure& a, const Structure& b, const Mapping& m) {
    if (a.size != b.size || a.maps.size() != b.maps.size() || static_cast<int>(m.size()) != a.size) return false;
    std::vector<char> hit(b.size, 0);
    for (int x = 0; x < a.size; ++x) {
        if (m[x] < 0 || m[x] >= b.size || hit[m[x]]) return false;
        hit[m[x]] = 1;
        if (a.colors[x] != b.colors[m[x]]) return false;
    }
    for (std::size_t k = 0; k < a.maps.size(); ++k)
        for (int x = 0; x < a.size; ++x) {
            int fx = a.maps[k][x];
            int gy = b.maps[k][m[x]];
            if ((fx < 0) != (gy < 0)) return false;
            if (fx >= 0 && m[fx] != gy) return false;
        }
    return true;
}

std::uint64_t invariant(const Structure& s) {
    Prepared p(s);
    Colors c = s.colors;
    refine(p, c);
    std::sort(c.begin(), c.end());
    std::uint64_t h = mix(0, static_cast<std::uint64_t>(s.size));
    for (auto v : c) h = mix(h, v);
    return h;
}

std::optional<std::vector<std::uint64_t>> discrete_certificate(const Structure& s) {
    Prepared p(s);
    Colors c = s.colors;
    refine(p, c);
    std::vector<int> order(s.size);
    for (int x = 0; x < s.size; ++x) order[x] = x;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return c[a] < c[b]; });
    for (int i = 1; i < s.size; ++i)
        if (c[order[i]] == c[order[i - 1]]) return std::nullopt;
    std::vector<int> rank(s.size);
    for (int i = 0; i < s.size; ++i) rank[order[i]] = i;
    std::vector<std::uint64_t> cert{static_cast<std::uint64_t>(s.size), s.maps.size()};
    for (int x : order) {
        cert.push_back(s.colors[x]);
        for (const auto& f : s.maps) cert.push_back(f[x] < 0 ? ~0ULL : static_cast<std::uint64_t>(rank[f[x]]));
    }
    return cert;
}

std::optional<Mapping> find_isomorphism(const Structure& a, const Structure& b) {
    if (a.size != b.size || a.maps.size() != b.maps.size()) return std::nullopt;
    Prepared pa(a), pb(b);
    return find_with(pa, a.colors, pb, b.colors);
}

void for_each_isomorphism(const Structure& a, const Structure& b,
                          const std::function<bool(const Mapping&)>& visit) {
    if (a.size != b.size || a.maps.size() != b.maps.size()) return;
    Prepared pa(a), pb(b);
    search(pa, a.colors, pb, b.colors, visit);
}

std::vector<Mapping> all_isomorphisms(const Structure& a, const Structure& b) {
    std::vector<Mapping> out;
    for_each_isomorphism(a, b, [&](const Mapping& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

Group automorphism_group(const Structure& s) {
    Prepared p(s);
    Group g;
    g.order = stabilizer_chain(p, s.colors, g.generators);
    return g;
}

std::vector<std::vector<int>> orbits(int n, const std::vector<Mapping>& gens) {
    std::vector<int> label(n, -1);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < n; ++x) {
        if (label[x] >= 0) continue;
        std::vector<int> orb{x};
        label[x] = static_cast<int>(out.size());
        for (std::size_t i = 0; i < orb.size(); ++i)
            for (const auto& g : gens) {
                int y = g[orb[i]];
                if (label[y] < 0) {
                    label[y] = label[x];
                    orb.push_back(y);
                }
            }
        std::sort(orb.begin(), orb.end());
        out.push_back(std::move(orb));
    }
    return out;
}

}  // namespace tgw::iso
