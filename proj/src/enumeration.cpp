#include "tgw/enumeration.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace tgw {

namespace {

// Distinct sub-multisets of a non-increasing partition, optionally with a fixed sum.
void sub_multisets(const Partition& p, std::size_t i, int wantSum, int curSum, Partition& cur,
                   std::vector<Partition>& out) {
    if (i == p.size()) {
        if (wantSum < 0 || curSum == wantSum) out.push_back(cur);
        return;
    }
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const int value = p[i];
    const int available = static_cast<int>(j - i);
    for (int take = 0; take <= available; ++take) {
        if (wantSum >= 0 && curSum + take * value > wantSum) break;
        for (int k = 0; k < take; ++k) cur.push_back(value);
        sub_multisets(p, j, wantSum, curSum + take * value, cur, out);
        for (int k = 0; k < take; ++k) cur.pop_back();
    }
}

std::vector<Partition> sub_multisets(const Partition& p, int wantSum = -1) {
    std::vector<Partition> out;
    Partition cur;
    sub_multisets(p, 0, wantSum, 0, cur, out);
    return out;
}

Partition remove_parts(const Partition& p, const Partition& sub) {
    Partition out;
    std::size_t j = 0;
    for (int x : p) {
        if (j < sub.size() && sub[j] == x) ++j;
        else out.push_back(x);
    }
    return out;
}

void decompose(const std::array<Partition, 3>& rest, LocalCover& cur, std::set<LocalCover>& out) {
    if (rest[0].empty()) {
        if (rest[1].empty() && rest[2].empty()) {
            LocalCover sorted = cur;
            std::sort(sorted.begin(), sorted.end());
            out.insert(std::move(sorted));
        }
        return;
    }
    const int x = rest[0].front();
    Partition tail(rest[0].begin() + 1, rest[0].end());
    for (const auto& t : sub_multisets(tail)) {
        Partition s0{x};
        s0.insert(s0.end(), t.begin(), t.end());
        const int d = sum_of(s0);
        for (const auto& s1 : sub_multisets(rest[1], d))
            for (const auto& s2 : sub_multisets(rest[2], d)) {
                if (static_cast<int>(s0.size() + s1.size() + s2.size()) != d + 2) continue;
                if (hurwitz_genus0(d, {s0, s1, s2}) == 0) continue;
                cur.push_back(LocalBlock{d, {s0, s1, s2}});
                decompose({remove_parts(rest[0], s0), remove_parts(rest[1], s1), remove_parts(rest[2], s2)}, cur, out);
                cur.pop_back();
            }
    }
}

}  // namespace

std::vector<LocalCover> local_covers(int d, const std::array<std::optional<Partition>, 3>& directions) {
    for (const auto& dir : directions)
        if (dir && sum_of(*dir) != d)
            throw Error(ErrorKind::ProfileSumMismatch, "direction profile " + to_string(*dir) + " does not sum to " + std::to_string(d));
    std::array<std::vector<Partition>, 3> choices;
    const auto all = partitions_of(d);
    for (int k = 0; k < 3; ++k) choices[k] = directions[k] ? std::vector<Partition>{make_partition(*directions[k])} : all;
    std::set<LocalCover> out;
    for (const auto& a : choices[0])
        for (const auto& b : choices[1])
            for (const auto& c : choices[2]) {
                LocalCover cur;
                decompose({a, b, c}, cur, out);
            }
    return {out.begin(), out.end()};
}

Partition weierstrass_profile(int g, int mark) {
    if (mark == 1) return {g};
    Partition p(g - 1, 1);
    p[0] = 2;
    return p;
}

namespace {

// Partially assembled source over the target vertices processed so far.
struct Partial {
    std::vector<int> root, inv, tmap, deg;
    std::vector<char> dangling;

    int add(int r, int t, int d, bool open) {
        int f = static_cast<int>(root.size());
        root.push_back(r < 0 ? f : r);
        inv.push_back(f);
        tmap.push_back(t);
        deg.push_back(d);
        dangling.push_back(open ? 1 : 0);
        return f;
    }

    // Legs and dangling flags hang off their vertex interchangeably, so they are folded into
    // the vertex color; the structure keeps vertices and matched edge halves.
    iso::Structure structure() const {
        const int n = static_cast<int>(root.size());
        std::vector<int> node(n, -1), kept;
        std::vector<std::vector<std::uint64_t>> hanging(n);
        for (int f = 0; f < n; ++f) {
            if (root[f] == f || inv[f] != f) {
                node[f] = static_cast<int>(kept.size());
                kept.push_back(f);
            } else {
                hanging[root[f]].push_back(iso::mix(iso::mix(tmap[f], deg[f]), dangling[f]));
            }
        }
        iso::Structure s;
        s.size = static_cast<int>(kept.size());
        s.maps.assign(2, std::vector<int>(s.size));
        s.colors.resize(s.size);
        for (int i = 0; i < s.size; ++i) {
            int f = kept[i];
            s.maps[0][i] = node[root[f]];
            s.maps[1][i] = node[inv[f]];
            std::uint64_t c = iso::mix(root[f] == f ? 1 : 2, static_cast<std::uint64_t>(tmap[f]));
            c = iso::mix(c, static_cast<std::uint64_t>(deg[f]));
            auto& h = hanging[f];
            std::sort(h.begin(), h.end());
            for (auto x : h) c = iso::mix(c, x);
            s.colors[i] = c;
        }
        return s;
    }
};

// Keeps one representative per isomorphism class (target fixed).
class Deduper {
public:
    bool insert(const iso::Structure& s) {
        if (auto cert = iso::discrete_certificate(s)) return certificates_.insert(std::move(*cert)).second;
        auto& bucket = buckets_[iso::invariant(s)];
        for (const auto& other : bucket)
            if (iso::find_isomorphism(s, other)) return false;
        bucket.push_back(s);
        return true;
    }

private:
    std::set<std::vector<std::uint64_t>> certificates_;
    std::map<std::uint64_t, std::vector<iso::Structure>> buckets_;
};

void matchings(const std::vector<int>& fresh, std::vector<int>& old, std::size_t i, const Partial& p,
               std::vector<std::pair<int, int>>& cur, std::vector<std::vector<std::pair<int, int>>>& out) {
    if (i == fresh.size()) {
        out.push_back(cur);
        return;
    }
    for (auto& o : old) {
        if (o < 0 || p.deg[o] != p.deg[fresh[i]]) continue;
        int saved = o;
        o = -1;
        cur.emplace_back(fresh[i], saved);
        matchings(fresh, old, i + 1, p, cur, out);
        cur.pop_back();
        o = saved;
    }
}

bool connected(const Partial& p) {
    const int n = static_cast<int>(p.root.size());
    std::vector<int> comp(n);
    for (int f = 0; f < n; ++f) comp[f] = f;
    std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
    for (int f = 0; f < n; ++f) {
        comp[find(f)] = find(p.root[f]);
        comp[find(f)] = find(p.inv[f]);
    }
    int r = find(0);
    for (int f = 0; f < n; ++f)
        if (find(f) != r) return false;
    return true;
}

}  // namespace

std::vector<Cover> covers_over_tree(const DiscreteGraph& tree, int g) {
    if (!tree.is_trivalent() || tree.genus() != 0 || !tree.is_connected())
        throw Error(ErrorKind::NotTrivalent, "target must be a connected trivalent tree");
    if (!tree.is_marked() || static_cast<int>(tree.legs().size()) != 3 * g)
        throw Error(ErrorKind::WrongProfile, "target must carry 3g marked legs");
    // vertex order: breadth first from the vertex carrying leg 1
    std::vector<int> order{tree.root(tree.marking()[0])}, parentFlag{-1};
    std::vector<char> seen(tree.num_flags(), 0);
    seen[order[0]] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int h : tree.flags_at(order[i])) {
            if (!tree.is_edge_flag(h)) continue;
            int w = tree.other_end(h);
            if (seen[w]) continue;
            seen[w] = 1;
            order.push_back(w);
            parentFlag.push_back(tree.involution(h));
        }

    std::map<std::array<std::optional<Partition>, 3>, std::vector<LocalCover>> fibers;
    std::vector<Partial> states{Partial{}};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const int v = order[i];
        const auto& dirs = tree.flags_at(v);
        std::vector<Partial> next;
        Deduper seenStates;
        for (const auto& st : states) {
            std::array<std::optional<Partition>, 3> constraint;
            std::vector<int> old;
            for (int k = 0; k < 3; ++k) {
                int h = dirs[k];
                if (tree.is_leg(h)) {
                    constraint[k] = weierstrass_profile(g, tree.mark_of(h));
                } else if (h == parentFlag[i]) {
                    std::vector<int> parts;
                    for (int f = 0; f < static_cast<int>(st.root.size()); ++f)
                        if (st.dangling[f] && st.tmap[f] == tree.involution(h)) {
                            parts.push_back(st.deg[f]);
                            old.push_back(f);
                        }
                    constraint[k] = make_partition(parts);
                }
            }
            auto it = fibers.find(constraint);
            if (it == fibers.end()) it = fibers.emplace(constraint, local_covers(g, constraint)).first;
            for (const auto& lc : it->second) {
                Partial base = st;
                std::vector<int> fresh;
                for (const auto& block : lc) {
                    int vf = base.add(-1, v, block.degree, false);
                    for (int k = 0; k < 3; ++k) {
                        int h = dirs[k];
                        for (int part : block.parts[k]) {
                            int f = base.add(vf, h, part, tree.is_edge_flag(h));
                            if (h == parentFlag[i]) fresh.push_back(f);
                        }
                    }
                }
                std::vector<std::vector<std::pair<int, int>>> ms;
                std::vector<std::pair<int, int>> cur;
                std::vector<int> pool = old;
                matchings(fresh, pool, 0, base, cur, ms);
                for (const auto& m : ms) {
                    Partial s = base;
                    for (auto [a, b] : m) {
                        s.inv[a] = b;
                        s.inv[b] = a;
                        s.dangling[a] = s.dangling[b] = 0;
                    }
                    if (seenStates.insert(s.structure())) next.push_back(std::move(s));
                }
            }
        }
        states = std::move(next);
    }

    std::vector<Cover> out;
    for (const auto& s : states) {
        if (!connected(s)) continue;
        const int n = static_cast<int>(s.root.size());
        std::vector<int> marking, weights(n, 0);
        for (int f = 0; f < n; ++f)
            if (s.root[f] != f && s.inv[f] == f) weights[f] = s.deg[f];
        for (int leg : tree.marking()) {
            std::vector<int> over;
            for (int f = 0; f < n; ++f)
                if (s.tmap[f] == leg) over.push_back(f);
            std::stable_sort(over.begin(), over.end(), [&](int a, int b) { return s.deg[a] > s.deg[b]; });
            marking.insert(marking.end(), over.begin(), over.end());
        }
        Cover c{DiscreteGraph(s.root, s.inv, marking, weights), tree, s.tmap, s.deg};
        validate_cover(c);
        out.push_back(std::move(c));
    }
    return out;
}

Integer labelling_group_order(int g) {
    Integer r = 1;
    for (int i = 2; i <= 3 * g - 1; ++i) r *= i;
    Integer f = 1;
    for (int i = 2; i <= g - 2; ++i) f *= i;
    for (int i = 0; i < 3 * g - 1; ++i) r *= f;
    return r;
}

std::vector<int> core_flags(const Cover& c, const Stabilization& st) {
    std::set<int> out;
    for (int v : st.graph.vertices()) out.insert(st.origin[v]);
    for (const auto& p : st.paths)
        for (int h : p) {
            out.insert(h);
            out.insert(c.source.involution(h));
            out.insert(c.source.root(h));
        }
    return {out.begin(), out.end()};
}

RationalMatrix stabilized_f_matrix(const Cover& c, const Stabilization& st) {
    const int rows = static_cast<int>(st.graph.edges().size());
    const int cols = static_cast<int>(c.target.edges().size());
    std::vector<int> lcms(cols);
    for (int t = 0; t < cols; ++t) lcms[t] = edge_lcm(c, t);
    RationalMatrix m = RationalMatrix::Zero(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int h : st.paths[r]) {
            int t = c.target.edge_index(c.flagMap[h]);
            m(r, t) += Rational(lcms[t], c.degree[h]);
        }
    return m;
}

namespace {

int worker_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TW_WORKERS")) {
        int w = std::atoi(env);
        if (w > 0) return w;
    }
    return 1;
}

// Stabilized source, its matrix and determinant: enough to decide whether the cover contributes.
void fill_core(CoverRecord& r, int g) {
    const Cover& cv = r.cover;
    r.core = stabilize(cv.source);
    r.ftF = stabilized_f_matrix(cv, *r.core);
    const int edges = static_cast<int>(r.core->graph.edges().size());
    r.det = edges == 3 * g - 3 && r.core->graph.is_trivalent() ? r.ftF.determinant() : Rational(0);
    r.contributing = r.det != 0;
}

void fill_symmetries(CoverRecord& r, int g, EnumerationMode mode) {
    const Cover& cv = r.cover;
    CoverStructureOptions symOpt;
    if (mode == EnumerationMode::Quotient) symOpt.distinguishedTargetMarks = {1};
    else symOpt.fixTarget = true;
    auto group = iso::automorphism_group(cover_structure(cv, symOpt));
    r.symmetryOrder = group.order;
    r.symmetryGenerators = std::move(group.generators);
    CoverStructureOptions kOpt;
    kOpt.fixTarget = true;
    kOpt.fixedSourceFlags = cv.source.legs();
    r.legFixingOrder = iso::automorphism_group(cover_structure(cv, kOpt)).order;
    Integer groupOrder = labelling_group_order(g);
    if (mode == EnumerationMode::Labelled) {
        Integer f = 1;
        for (int i = 2; i <= g - 2; ++i) f *= i;
        groupOrder = 1;
        for (int i = 0; i < 3 * g - 1; ++i) groupOrder *= f;
    }
    r.orbitSize = groupOrder * r.legFixingOrder / r.symmetryOrder;
    r.weight = standard_weight(cv);
    r.stab = stabilizers(cv, core_flags(cv, *r.core));
    r.multiplicity = r.contributing ? cover_multiplicity(r.weight.weight, r.det, r.stab) : Integer(0);
}

}  // namespace

EnumerationResult enumerate_all(int g, EnumerationMode mode, int workers) {
    EnumerationOptions opt;
    opt.mode = mode;
    opt.workers = workers;
    return enumerate_all(g, opt);
}

EnumerationResult enumerate_all(int g, const EnumerationOptions& opt) {
    const EnumerationMode mode = opt.mode;
    if (g < 2) throw Error(ErrorKind::GenusTooSmall, "genus must be at least 2");
    if (g > 4) throw Error(ErrorKind::GenusCapExceeded, "genus cap is 4");
    if (mode == EnumerationMode::Labelled && g > 3)
        throw Error(ErrorKind::GenusCapExceeded, "labelled enumeration is limited to g <= 3");
    EnumerationResult res;
    res.genus = g;
    res.mode = mode;
    res.contributingOnly = opt.contributingOnly;
    res.trees = enumerate_trivalent_trees(3 * g, mode == EnumerationMode::Quotient ? TreeMode::Interchangeable : TreeMode::Labelled);
    std::vector<std::vector<CoverRecord>> perTree(res.trees.size());
    std::atomic<std::size_t> nextTree{0};
    std::mutex errMu;
    std::exception_ptr failure;
    auto work = [&] {
        for (;;) {
            std::size_t t = nextTree++;
            if (t >= res.trees.size()) return;
            try {
                std::vector<CoverRecord> recs;
                for (auto& c : covers_over_tree(res.trees[t].tree, g)) {
                    CoverRecord r;
                    r.cover = std::move(c);
                    r.treeIndex = static_cast<int>(t);
                    fill_core(r, g);
                    if (r.contributing || !opt.contributingOnly) recs.push_back(std::move(r));
                }
                if (mode == EnumerationMode::Quotient) {
                    // merge covers related by a symmetry of the tree fixing leg 1
                    std::vector<CoverRecord> kept;
                    std::map<std::uint64_t, std::vector<iso::Structure>> buckets;
                    CoverStructureOptions sopt;
                    sopt.distinguishedTargetMarks = {1};
                    for (auto& r : recs) {
                        auto s = cover_structure(r.cover, sopt);
                        auto& bucket = buckets[iso::invariant(s)];
                        bool dup = false;
                        for (const auto& o : bucket)
                            if (iso::find_isomorphism(s, o)) {
                                dup = true;
                                break;
                            }
                        if (dup) continue;
                        bucket.push_back(std::move(s));
                        kept.push_back(std::move(r));
                    }
                    recs = std::move(kept);
                }
                for (auto& r : recs) fill_symmetries(r, g, mode);
                perTree[t] = std::move(recs);
            } catch (...) {
                std::lock_guard lock(errMu);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const int n = std::max(1, std::min<int>(worker_count(opt.workers), static_cast<int>(res.trees.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& v : perTree)
        for (auto& r : v) res.covers.push_back(std::move(r));
    return res;
}

}  // namespace tgw
