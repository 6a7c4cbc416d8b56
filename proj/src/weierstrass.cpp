#include "tgw/weierstrass.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace tgw {

namespace {

StructureOptions bare() {
    StructureOptions o;
    o.useMarking = false;
    o.useLegWeights = false;
    return o;
}

void check_model(const MetricGraph& m, int g) {
    const auto& model = m.graph();
    if (!model.legs().empty()) throw Error(ErrorKind::NonTrivalentModel, "model must be legless");
    if (!model.is_trivalent() || static_cast<int>(model.edges().size()) != 3 * g - 3)
        throw Error(ErrorKind::NonTrivalentModel, "model must be trivalent with 3g-3 edges");
    if (model.genus() != g)
        throw Error(ErrorKind::UsageError, "model genus " + std::to_string(model.genus()) + " differs from enumeration genus " +
                                               std::to_string(g));
}

}  // namespace

Point locate_point(const MetricGraph& m, const Cover& c, const Stabilization& core,
                   const iso::Mapping& identification, const RationalVector& delta) {
    int heavy = -1;
    for (int f = 0; f < c.source.num_flags(); ++f)
        if (c.flagMap[f] == c.target.marking()[0]) heavy = f;
    const auto& loc = core.location[c.source.root(heavy)];
    if (loc.stableVertex >= 0) return Point::at_vertex(identification[loc.stableVertex]);
    Rational pos = 0;
    const auto& path = core.paths[loc.edge];
    for (int k = 0; k < loc.step; ++k) {
        int h = path[k];
        int t = c.target.edge_index(c.flagMap[h]);
        pos += Rational(edge_lcm(c, t), c.degree[h]) * delta(t);
    }
    int stableFlag = core.graph.edges()[loc.edge].first;
    return Point::along(m, identification[stableFlag], pos);
}

WitnessSet fiber_witnesses(const MetricGraph& m, const EnumerationResult& covers) {
    const int g = covers.genus;
    check_model(m, g);
    const auto& model = m.graph();
    auto modelStructure = to_structure(model, bare());
    WitnessSet out;
    for (std::size_t i = 0; i < covers.covers.size(); ++i) {
        const auto& rec = covers.covers[i];
        if (!rec.contributing) continue;
        const auto& core = *rec.core;
        auto lu = rec.ftF.fullPivLu();
        bool degenerate = false;
        iso::for_each_isomorphism(to_structure(core.graph, bare()), modelStructure, [&](const iso::Mapping& phi) {
            const auto& edges = core.graph.edges();
            RationalVector lengths(static_cast<Eigen::Index>(edges.size()));
            for (std::size_t r = 0; r < edges.size(); ++r) lengths(r) = m.length(model.edge_index(phi[edges[r].first]));
            RationalVector delta = lu.solve(lengths);
            bool positive = true;
            for (Eigen::Index t = 0; t < delta.size(); ++t) {
                if (delta(t) == 0) degenerate = true;
                if (delta(t) <= 0) positive = false;
            }
            if (positive)
                out.witnesses.push_back({static_cast<int>(i), phi, delta, locate_point(m, rec.cover, core, phi, delta)});
            return true;
        });
        if (degenerate) out.degenerate.push_back(static_cast<int>(i));
    }
    return out;
}

std::vector<iso::Mapping> isometries(const MetricGraph& m) {
    const auto& g = m.graph();
    std::vector<iso::Mapping> out;
    for (auto& a : find_isomorphisms(g, g)) {
        bool keeps = true;
        for (std::size_t e = 0; e < g.edges().size() && keeps; ++e)
            keeps = m.length(static_cast<int>(e)) == m.length(g.edge_index(a[g.edges()[e].first]));
        if (keeps) out.push_back(std::move(a));
    }
    return out;
}

std::vector<MarkedClass> marked_classes(const MetricGraph& m, const EnumerationResult& covers,
                                        const std::vector<GwpWitness>& witnesses) {
    const auto isos = isometries(m);
    std::map<int, std::vector<int>> byCover;
    for (std::size_t w = 0; w < witnesses.size(); ++w) byCover[witnesses[w].coverIndex].push_back(static_cast<int>(w));
    std::vector<MarkedClass> out;
    for (const auto& [ci, members] : byCover) {
        const auto& rec = covers.covers[ci];
        const auto& core = *rec.core;
        const int ns = rec.cover.source.num_flags();
        const int nStable = core.graph.num_flags();
        std::map<int, int> stableOf;
        for (int s = 0; s < nStable; ++s) stableOf[core.origin[s]] = s;
        // symmetries of the cover, seen on the stabilized source
        std::vector<iso::Mapping> sigma;
        for (const auto& psi : rec.symmetryGenerators) {
            iso::Mapping sg(nStable);
            for (int s = 0; s < nStable; ++s) {
                int img = psi[core.origin[s]];
                if (img >= ns || !stableOf.count(img))
                    throw Error(ErrorKind::InconsistentClassMultiplicity, "symmetry does not preserve the stabilized source");
                sg[s] = stableOf[img];
            }
            sigma.push_back(std::move(sg));
        }
        std::map<iso::Mapping, int> index;
        for (std::size_t k = 0; k < members.size(); ++k) index[witnesses[members[k]].identification] = static_cast<int>(k);
        auto lookup = [&](const iso::Mapping& phi) {
            auto it = index.find(phi);
            if (it == index.end())
                throw Error(ErrorKind::InconsistentClassMultiplicity, "witness set is not closed under symmetries");
            return it->second;
        };
        const int n = static_cast<int>(members.size());
        std::vector<std::vector<int>> coverMoves, allMoves;
        for (const auto& sg : sigma) {
            std::vector<int> mv(n);
            for (int k = 0; k < n; ++k) {
                const auto& phi = witnesses[members[k]].identification;
                iso::Mapping moved(nStable);
                for (int s = 0; s < nStable; ++s) moved[sg[s]] = phi[s];
                mv[k] = lookup(moved);
            }
            coverMoves.push_back(mv);
            allMoves.push_back(mv);
        }
        for (const auto& gamma : isos) {
            std::vector<int> mv(n);
            for (int k = 0; k < n; ++k) {
                const auto& phi = witnesses[members[k]].identification;
                iso::Mapping moved(nStable);
                for (int s = 0; s < nStable; ++s) moved[s] = gamma[phi[s]];
                mv[k] = lookup(moved);
            }
            allMoves.push_back(mv);
        }
        auto coverOrbits = iso::orbits(n, coverMoves);
        const Integer stabilizer = rec.stab.horizontal * rec.stab.vertical;
        std::vector<int> orbitOf(n);
        for (std::size_t o = 0; o < coverOrbits.size(); ++o) {
            const auto& orb = coverOrbits[o];
            if (rec.symmetryOrder / static_cast<long>(orb.size()) != stabilizer ||
                rec.symmetryOrder % static_cast<long>(orb.size()) != 0)
                throw Error(ErrorKind::InconsistentClassMultiplicity,
                            "orbit of size " + std::to_string(orb.size()) + " under a group of order " + rec.symmetryOrder.str() +
                                " disagrees with stabilizer " + stabilizer.str());
            for (int k : orb) {
                orbitOf[k] = static_cast<int>(o);
                if (!(witnesses[members[k]].point == witnesses[members[orb.front()]].point))
                    throw Error(ErrorKind::InconsistentClassMultiplicity, "symmetric witnesses locate different points");
            }
        }
        for (const auto& cls : iso::orbits(n, allMoves)) {
            MarkedClass mc;
            mc.coverIndex = ci;
            std::set<int> distinctOrbits;
            std::set<Point> pts;
            for (int k : cls) {
                mc.members.push_back(witnesses[members[k]]);
                distinctOrbits.insert(orbitOf[k]);
                pts.insert(witnesses[members[k]].point);
            }
            mc.multiplicity = rec.multiplicity * static_cast<long>(distinctOrbits.size());
            mc.orbit.assign(pts.begin(), pts.end());
            mc.point = mc.orbit.front();
            out.push_back(std::move(mc));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const MarkedClass& a, const MarkedClass& b) {
        if (!(a.point == b.point)) return a.point < b.point;
        return a.coverIndex < b.coverIndex;
    });
    return out;
}

GwpReport count_gwp(const MetricGraph& m, const EnumerationResult& covers, const GwpOptions& opt) {
    const int g = m.genus();
    if (g < 2) throw Error(ErrorKind::GenusTooSmall, "geometric Weierstrass points need genus >= 2");
    GwpReport rep;
    rep.genus = g;
    rep.expected = Integer(g) * g * g - g;
    auto ws = fiber_witnesses(m, covers);
    if (!ws.degenerate.empty()) {
        rep.genericityViolation = true;
        rep.warnings.push_back("lengths are not generic: " + std::to_string(ws.degenerate.size()) +
                               " cover(s) have a vanishing edge parameter");
    }
    for (const auto& iso : isometries(m)) {
        const auto& model = m.graph();
        bool movesEdge = false;
        for (const auto& [a, b] : model.edges()) movesEdge = movesEdge || model.edge_index(iso[a]) != model.edge_index(a);
        if (movesEdge) {
            rep.genericityViolation = true;
            rep.warnings.push_back("lengths are not generic: an isometry permutes edges");
            break;
        }
    }
    rep.classes = marked_classes(m, covers, ws.witnesses);
    std::map<Point, int> owner;
    for (std::size_t i = 0; i < rep.classes.size(); ++i)
        for (const auto& p : rep.classes[i].orbit) {
            auto [it, fresh] = owner.emplace(p, static_cast<int>(i));
            if (!fresh) {
                rep.genericityViolation = true;
                rep.warnings.push_back("two classes share a point");
            }
        }
    std::map<Point, Integer> table;
    rep.total = 0;
    for (const auto& c : rep.classes) {
        table[c.point] += c.multiplicity;
        rep.total += c.multiplicity;
    }
    rep.pointTable.assign(table.begin(), table.end());
    rep.certified = !rep.genericityViolation && rep.total == rep.expected;
    if (opt.verifyRank) {
        RankOptions ro;
        ro.maxVertices = opt.rankBudget;
        ro.candidates = Candidates::ModelVertices;
        for (auto& c : rep.classes) {
            try {
                bool all = true;
                for (const auto& p : c.orbit) all = all && is_weierstrass(m, p, ro);
                c.weierstrass = all;
                if (!all) rep.warnings.push_back("a reported point failed the rank check");
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SubdivisionTooLarge) throw;
                rep.warnings.push_back(std::string("rank check skipped: ") + e.what());
            }
        }
    }
    return rep;
}

GwpReport count_gwp(const MetricGraph& m, const GwpOptions& opt) {
    if (m.genus() < 2) throw Error(ErrorKind::GenusTooSmall, "geometric Weierstrass points need genus >= 2");
    EnumerationOptions eo;
    eo.workers = opt.workers;
    eo.contributingOnly = true;
    return count_gwp(m, enumerate_all(m.genus(), eo), opt);
}

Integer pushforward_total(const MetricGraph& m, const EnumerationResult& covers) {
    auto ws = fiber_witnesses(m, covers);
    if (!ws.degenerate.empty()) throw Error(ErrorKind::GenericityViolation, "lengths are not generic");
    std::map<int, long> fiberSize;
    for (const auto& w : ws.witnesses) ++fiberSize[w.coverIndex];
    Rational total = 0;
    for (const auto& [ci, count] : fiberSize) {
        const auto& rec = covers.covers[ci];
        total += Rational(rec.orbitSize) * Rational(count) / Rational(rec.legFixingOrder) * rec.weight.weight * abs(rec.det);
    }
    if (!is_integer(total)) throw Error(ErrorKind::NonIntegralMultiplicity, "pushforward total " + to_string(total));
    return numerator(total);
}

Integer pushforward_total(int g, EnumerationMode mode) {
    MetricGraph m(families::loops_on_caterpillar(g), generic_lengths(3 * g - 3, 1));
    EnumerationOptions eo;
    eo.mode = mode;
    eo.contributingOnly = true;
    return pushforward_total(m, enumerate_all(g, eo));
}

Integer expected_pushforward_total(int g) { return labelling_group_order(g) * (Integer(g) * g * g - g); }

std::vector<Rational> generic_lengths(int count, std::uint64_t seed) {
    auto primes = [](int lo, int hi) {
        std::vector<int> out;
        for (int n = std::max(lo, 2); n <= hi; ++n) {
            bool prime = true;
            for (int d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
            if (prime) out.push_back(n);
        }
        return out;
    };
    auto num = primes(101, 997);
    auto den = primes(2, 97);
    // explicit Fisher-Yates: std::shuffle's draw pattern is implementation-defined
    std::mt19937_64 rng(seed);
    auto shuffle = [&](std::vector<int>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
    };
    shuffle(num);
    shuffle(den);
    if (count > static_cast<int>(den.size())) throw Error(ErrorKind::UsageError, "too many lengths requested");
    std::vector<Rational> out;
    for (int i = 0; i < count; ++i) out.emplace_back(num[i], den[i]);
    return out;
}

}  // namespace tgw
