#include "tgw/graph.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace tgw {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

std::string flag_name(const DiscreteGraph& g, int f) { return std::to_string(g.label(f)); }

}  // namespace

DiscreteGraph::DiscreteGraph(std::vector<int> root, std::vector<int> involution, std::vector<int> marking,
                             std::vector<int> legWeight, std::vector<long long> labels)
    : root_(std::move(root)),
      inv_(std::move(involution)),
      marking_(std::move(marking)),
      weight_(std::move(legWeight)),
      labels_(std::move(labels)) {
    const int n = num_flags();
    auto name = [&](int f) { return labels_.empty() ? std::to_string(f) : std::to_string(labels_[f]); };
    if (static_cast<int>(inv_.size()) != n)
        throw Error(ErrorKind::UnknownFlag, "root and involution have different lengths");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
        throw Error(ErrorKind::UnknownFlag, "label list has wrong length");
    for (int f = 0; f < n; ++f) {
        if (root_[f] < 0 || root_[f] >= n || inv_[f] < 0 || inv_[f] >= n)
            throw Error(ErrorKind::UnknownFlag, "flag " + name(f) + " maps outside the flag set");
    }
    for (int f = 0; f < n; ++f)
        if (inv_[inv_[f]] != f)
            throw Error(ErrorKind::InvolutionNotIdempotent, "involution is not an involution at flag " + name(f));
    for (int f = 0; f < n; ++f)
        if (root_[root_[f]] != root_[f])
            throw Error(ErrorKind::RootNotIdempotent, "root of flag " + name(f) + " is not a vertex");
    for (int f = 0; f < n; ++f)
        if (inv_[root_[f]] != root_[f])
            throw Error(ErrorKind::RootInvolutionIncompatible, "involution moves vertex " + name(root_[f]));

    at_.assign(n, {});
    edgeIndex_.assign(n, -1);
    for (int f = 0; f < n; ++f) {
        if (is_vertex(f)) {
            vertices_.push_back(f);
        } else {
            at_[root_[f]].push_back(f);
            if (inv_[f] == f) legs_.push_back(f);
            else if (f < inv_[f]) edges_.emplace_back(f, inv_[f]);
        }
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        edgeIndex_[edges_[i].first] = static_cast<int>(i);
        edgeIndex_[edges_[i].second] = static_cast<int>(i);
    }

    if (!marking_.empty()) {
        markOf_.assign(n, 0);
        if (marking_.size() != legs_.size())
            throw Error(ErrorKind::MarkingNotBijective,
                        "marking has " + std::to_string(marking_.size()) + " entries for " +
                            std::to_string(legs_.size()) + " legs");
        for (std::size_t i = 0; i < marking_.size(); ++i) {
            int f = marking_[i];
            if (f < 0 || f >= n || !is_leg(f) || markOf_[f] != 0)
                throw Error(ErrorKind::MarkingNotBijective, "mark " + std::to_string(i + 1) + " is not a fresh leg");
            markOf_[f] = static_cast<int>(i) + 1;
        }
    }
    if (!weight_.empty()) {
        if (static_cast<int>(weight_.size()) != n)
            throw Error(ErrorKind::UnknownFlag, "leg weight list has wrong length");
        for (int f = 0; f < n; ++f) {
            if (is_leg(f) && weight_[f] <= 0)
                throw Error(ErrorKind::NonpositiveWeight, "leg " + name(f) + " has no positive weight");
            if (!is_leg(f) && weight_[f] != 0)
                throw Error(ErrorKind::NonpositiveWeight, "flag " + name(f) + " is not a leg but carries a weight");
        }
    }
}

int DiscreteGraph::leg_valence(int v) const {
    int k = 0;
    for (int f : at_[v]) k += is_leg(f);
    return k;
}

int DiscreteGraph::flag_of_label(long long label) const {
    if (labels_.empty()) return (label >= 0 && label < num_flags()) ? static_cast<int>(label) : -1;
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

int DiscreteGraph::num_components() const {
    UnionFind uf(num_flags());
    for (auto [a, b] : edges_) uf.unite(root_[a], root_[b]);
    int k = 0;
    for (int v : vertices_) k += uf.find(v) == v;
    return k;
}

int DiscreteGraph::genus() const {
    return static_cast<int>(edges_.size()) - static_cast<int>(vertices_.size()) + num_components();
}

bool DiscreteGraph::is_trivalent() const {
    for (int v : vertices_)
        if (valence(v) != 3) return false;
    return true;
}

bool is_forest(const DiscreteGraph& g, const std::vector<int>& edgeFlags) {
    UnionFind uf(g.num_flags());
    std::vector<char> seen(g.edges().size(), 0);
    for (int f : edgeFlags) {
        int e = g.edge_index(f);
        if (e < 0 || seen[e]) continue;
        seen[e] = 1;
        if (!uf.unite(g.root(f), g.other_end(f))) return false;
    }
    return true;
}

ContractResult contract(const DiscreteGraph& g, const std::vector<int>& edgeFlags) {
    const int n = g.num_flags();
    std::vector<char> inK(n, 0);
    UnionFind uf(n);
    for (int f : edgeFlags) {
        if (f < 0 || f >= n || g.is_vertex(f))
            throw Error(ErrorKind::UnknownFlag, "flag " + std::to_string(f) + " is not a half-edge");
        if (g.is_leg(f)) throw Error(ErrorKind::SubgraphHasLegs, "leg " + flag_name(g, f) + " in contracted set");
        if (inK[f]) continue;
        inK[f] = inK[g.involution(f)] = 1;
        if (!uf.unite(g.root(f), g.other_end(f)))
            throw Error(ErrorKind::SubgraphHasCycle, "contracted edges contain a cycle through " + flag_name(g, f));
    }
    ContractResult out;
    out.flagMap.assign(n, -1);
    int next = 0;
    for (int f = 0; f < n; ++f) {
        if (inK[f]) continue;
        if (g.is_vertex(f) && uf.find(f) != f) continue;
        out.flagMap[f] = next++;
    }
    std::vector<int> root(next), inv(next), weight, marking;
    std::vector<long long> labels(next);
    if (g.has_leg_weights()) weight.assign(next, 0);
    for (int f = 0; f < n; ++f) {
        int nf = out.flagMap[f];
        if (nf < 0) continue;
        root[nf] = out.flagMap[uf.find(g.root(f))];
        inv[nf] = out.flagMap[g.involution(f)];
        labels[nf] = g.label(f);
        if (g.has_leg_weights()) weight[nf] = g.leg_weight(f);
    }
    for (int f : g.vertices()) out.flagMap[f] = out.flagMap[uf.find(f)];
    for (int f : g.marking()) marking.push_back(out.flagMap[f]);
    out.graph = DiscreteGraph(std::move(root), std::move(inv), std::move(marking), std::move(weight), std::move(labels));
    return out;
}

Stabilization stabilize(const DiscreteGraph& g) {
    if (!g.is_connected()) throw Error(ErrorKind::GenusTooSmall, "graph is disconnected");
    if (g.genus() < 2) throw Error(ErrorKind::GenusTooSmall, "genus " + std::to_string(g.genus()) + " < 2");
    const int n = g.num_flags();
    std::vector<int> deg(n, 0);
    std::vector<char> edgeAlive(g.edges().size(), 1);
    for (auto [a, b] : g.edges()) {
        ++deg[g.root(a)];
        ++deg[g.root(b)];
    }
    std::vector<int> attach(n, -1), queue;
    std::vector<char> pruned(n, 0);
    for (int v : g.vertices())
        if (deg[v] <= 1) queue.push_back(v);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (pruned[v] || deg[v] > 1) continue;
        pruned[v] = 1;
        for (int h : g.flags_at(v)) {
            if (!g.is_edge_flag(h) || !edgeAlive[g.edge_index(h)]) continue;
            edgeAlive[g.edge_index(h)] = 0;
            int u = g.other_end(h);
            attach[v] = u;
            --deg[v];
            if (--deg[u] <= 1) queue.push_back(u);
        }
    }
    auto alive_flags = [&](int v) {
        std::vector<int> out;
        for (int h : g.flags_at(v))
            if (g.is_edge_flag(h) && edgeAlive[g.edge_index(h)]) out.push_back(h);
        return out;
    };
    std::vector<int> kept;
    for (int v : g.vertices())
        if (!pruned[v] && deg[v] >= 3) kept.push_back(v);

    Stabilization st;
    st.location.assign(n, {});
    std::vector<int> root, inv;
    std::vector<int> newVertex(n, -1);
    for (int v : kept) {
        newVertex[v] = static_cast<int>(root.size());
        root.push_back(newVertex[v]);
        inv.push_back(newVertex[v]);
        st.origin.push_back(v);
        st.location[v].stableVertex = newVertex[v];
    }
    std::vector<char> used(n, 0);
    std::vector<std::vector<int>> rawPaths;
    std::vector<int> pathStart;
    for (int v : kept) {
        for (int h : alive_flags(v)) {
            if (used[h]) continue;
            std::vector<int> steps{h};
            std::vector<int> interior;
            used[h] = used[g.involution(h)] = 1;
            int cur = h;
            int w = g.other_end(cur);
            while (newVertex[w] < 0) {
                interior.push_back(w);
                int next = -1;
                for (int x : alive_flags(w))
                    if (x != g.involution(cur)) next = x;
                steps.push_back(next);
                used[next] = used[g.involution(next)] = 1;
                cur = next;
                w = g.other_end(cur);
            }
            int s = static_cast<int>(root.size());
            root.push_back(newVertex[v]);
            root.push_back(newVertex[w]);
            inv.push_back(s + 1);
            inv.push_back(s);
            st.origin.push_back(steps.front());
            st.origin.push_back(g.involution(steps.back()));
            for (std::size_t k = 0; k < interior.size(); ++k) {
                st.location[interior[k]].edge = static_cast<int>(rawPaths.size());
                st.location[interior[k]].step = static_cast<int>(k) + 1;
            }
            rawPaths.push_back(std::move(steps));
            pathStart.push_back(s);
        }
    }
    st.graph = DiscreteGraph(root, inv);
    st.paths.assign(rawPaths.size(), {});
    std::vector<int> pathToEdge(rawPaths.size());
    for (std::size_t p = 0; p < rawPaths.size(); ++p) {
        int e = st.graph.edge_index(pathStart[p]);
        pathToEdge[p] = e;
        st.paths[e] = rawPaths[p];
    }
    for (int v : g.vertices())
        if (st.location[v].stableVertex < 0 && st.location[v].edge >= 0)
            st.location[v].edge = pathToEdge[st.location[v].edge];
    for (int v : g.vertices()) {
        if (!pruned[v]) continue;
        int u = v;
        while (pruned[u]) u = attach[u];
        st.location[v] = st.location[u];
    }
    std::vector<char> onPath(g.edges().size(), 0);
    for (const auto& p : st.paths)
        for (int h : p) onPath[g.edge_index(h)] = 1;
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        if (!onPath[e]) st.expunged.push_back(static_cast<int>(e));
    return st;
}

iso::Structure to_structure(const DiscreteGraph& g, const StructureOptions& opt) {
    iso::Structure s;
    s.size = g.num_flags();
    s.maps = {g.root_map(), g.involution_map()};
    s.colors.resize(s.size);
    for (int f = 0; f < s.size; ++f) {
        std::uint64_t c = g.is_vertex(f) ? 1 : g.is_leg(f) ? 2 : 3;
        if (opt.useLegWeights) c = iso::mix(c, static_cast<std::uint64_t>(g.leg_weight(f)));
        if (opt.useMarking && g.mark_of(f) > 0) {
            int m = g.mark_of(f);
            bool distinguished = opt.distinguishedMarks.empty() ||
                                 std::find(opt.distinguishedMarks.begin(), opt.distinguishedMarks.end(), m) !=
                                     opt.distinguishedMarks.end();
            c = iso::mix(c, distinguished ? 1000 + static_cast<std::uint64_t>(m) : 999);
        }
        s.colors[f] = c;
    }
    return s;
}

std::vector<iso::Mapping> find_isomorphisms(const DiscreteGraph& a, const DiscreteGraph& b) {
    StructureOptions opt;
    opt.useMarking = a.is_marked() && b.is_marked();
    opt.useLegWeights = a.has_leg_weights() && b.has_leg_weights();
    return iso::all_isomorphisms(to_structure(a, opt), to_structure(b, opt));
}

namespace families {

namespace {

// Vertices are flags 0..nv-1, then two flags per edge, then legs in mark order.
DiscreteGraph build(int nv, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& legVertex) {
    std::vector<int> root, inv;
    for (int v = 0; v < nv; ++v) {
        root.push_back(v);
        inv.push_back(v);
    }
    for (auto [a, b] : edges) {
        int s = static_cast<int>(root.size());
        root.push_back(a);
        root.push_back(b);
        inv.push_back(s + 1);
        inv.push_back(s);
    }
    std::vector<int> marking;
    for (int v : legVertex) {
        int s = static_cast<int>(root.size());
        root.push_back(v);
        inv.push_back(s);
        marking.push_back(s);
    }
    return DiscreteGraph(root, inv, marking);
}

}  // namespace

DiscreteGraph from_edge_list(int numVertices, const std::vector<std::pair<int, int>>& edges) {
    return build(numVertices, edges, {});
}

DiscreteGraph dumbbell() { return from_edge_list(2, {{0, 0}, {1, 1}, {0, 1}}); }

DiscreteGraph circle() { return from_edge_list(1, {{0, 0}}); }

DiscreteGraph theta() { return from_edge_list(2, {{0, 1}, {0, 1}, {0, 1}}); }

DiscreteGraph k4() { return from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

DiscreteGraph loops_on_caterpillar(int g, std::vector<std::string>* names) {
    if (g < 2) throw Error(ErrorKind::GenusTooSmall, "loops_on_caterpillar needs g >= 2");
    // V_i -> i-1, W_j -> g+j
    auto V = [](int i) { return i - 1; };
    auto W = [g](int j) { return g + j; };
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= g; ++i) edges.emplace_back(V(i), V(i));
    if (g == 2) {
        edges.emplace_back(V(1), V(2));
    } else {
        for (int i = 0; i <= g - 4; ++i) edges.emplace_back(W(i), W(i + 1));
        edges.emplace_back(W(0), V(1));
        for (int i = 2; i <= g - 1; ++i) edges.emplace_back(V(i), W(i - 2));
        edges.emplace_back(V(g), W(g - 3));
    }
    int nv = g == 2 ? 2 : 2 * g - 2;
    if (names) {
        names->assign(nv, "");
        for (int i = 1; i <= g; ++i) (*names)[V(i)] = "V" + std::to_string(i);
        for (int j = 0; j + g < nv; ++j) (*names)[W(j)] = "W" + std::to_string(j);
    }
    return build(nv, edges, {});
}

DiscreteGraph caterpillar_tree(int g, std::vector<std::string>* names) {
    if (g < 2) throw Error(ErrorKind::GenusTooSmall, "caterpillar_tree needs g >= 2");
    // B_i -> 2(i-1), B_i' -> 2(i-1)+1, M_j -> 2g+j
    auto B = [](int i) { return 2 * (i - 1); };
    auto Bp = [](int i) { return 2 * (i - 1) + 1; };
    auto M = [g](int j) { return 2 * g + j; };
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= g; ++i) edges.emplace_back(B(i), Bp(i));
    if (g == 2) {
        edges.emplace_back(B(1), B(2));
    } else {
        for (int i = 0; i <= g - 4; ++i) edges.emplace_back(M(i), M(i + 1));
        edges.emplace_back(M(0), B(1));
        for (int i = 2; i <= g - 1; ++i) edges.emplace_back(B(i), M(i - 2));
        edges.emplace_back(B(g), M(g - 3));
    }
    std::vector<int> legs;
    for (int i = 1; i <= g; ++i) {
        legs.push_back(Bp(i));
        legs.push_back(Bp(i));
        legs.push_back(B(i));
    }
    int nv = g == 2 ? 4 : 3 * g - 2;
    if (names) {
        names->assign(nv, "");
        for (int i = 1; i <= g; ++i) {
            (*names)[B(i)] = "B" + std::to_string(i);
            (*names)[Bp(i)] = "B" + std::to_string(i) + "'";
        }
        for (int j = 0; M(j) < nv; ++j) (*names)[M(j)] = "M" + std::to_string(j);
    }
    return build(nv, edges, legs);
}

}  // namespace families

namespace {

// Leaves are nodes 0..m-1 (leaf i+1), internal nodes follow.
using TreeEdges = std::vector<std::pair<int, int>>;

DiscreteGraph tree_graph(int m, const TreeEdges& edges) {
    std::vector<std::pair<int, int>> internal;
    std::vector<int> legVertex(m, -1);
    for (auto [a, b] : edges) {
        if (a < m) legVertex[a] = b - m;
        else if (b < m) legVertex[b] = a - m;
        else internal.emplace_back(a - m, b - m);
    }
    std::vector<int> root, inv;
    const int nv = m - 2;
    for (int v = 0; v < nv; ++v) {
        root.push_back(v);
        inv.push_back(v);
    }
    for (auto [a, b] : internal) {
        int s = static_cast<int>(root.size());
        root.push_back(a);
        root.push_back(b);
        inv.push_back(s + 1);
        inv.push_back(s);
    }
    std::vector<int> marking;
    for (int v : legVertex) {
        int s = static_cast<int>(root.size());
        root.push_back(v);
        inv.push_back(s);
        marking.push_back(s);
    }
    return DiscreteGraph(root, inv, marking);
}

TreeEdges insert_leaf(const TreeEdges& t, std::size_t edge, int leaf, int node) {
    TreeEdges out = t;
    auto [a, b] = out[edge];
    out[edge] = {a, node};
    out.emplace_back(node, b);
    out.emplace_back(node, leaf);
    return out;
}

void labelled_trees(int m, int k, const TreeEdges& t, std::vector<TreeEntry>& out) {
    if (k == m) {
        out.push_back({tree_graph(m, t), 1});
        return;
    }
    int node = m + (k - 2);
    for (std::size_t e = 0; e < t.size(); ++e) labelled_trees(m, k + 1, insert_leaf(t, e, k, node), out);
}

}  // namespace

std::vector<TreeEntry> enumerate_trivalent_trees(int m, TreeMode mode) {
    if (m < 3) throw Error(ErrorKind::UsageError, "trivalent trees need at least 3 legs");
    TreeEdges star{{m, 0}, {m, 1}, {m, 2}};
    std::vector<TreeEntry> out;
    if (mode == TreeMode::Labelled) {
        labelled_trees(m, 3, star, out);
        return out;
    }
    StructureOptions opt;
    opt.distinguishedMarks = {1};
    auto structure_of = [&](const TreeEdges& t) {
        // Unused leaves 'k..m-1' are absent; build on the leaves present so far.
        int leaves = static_cast<int>((t.size() + 3) / 2);
        TreeEdges relabelled;
        for (auto [a, b] : t) {
            auto fix = [&](int x) { return x < m ? x : x - m + leaves; };
            relabelled.emplace_back(fix(a), fix(b));
        }
        return to_structure(tree_graph(leaves, relabelled), opt);
    };
    std::vector<TreeEdges> reps{star};
    for (int k = 3; k < m; ++k) {
        int node = m + (k - 2);
        std::vector<TreeEdges> next;
        std::map<std::uint64_t, std::vector<std::pair<std::size_t, iso::Structure>>> buckets;
        for (const auto& t : reps)
            for (std::size_t e = 0; e < t.size(); ++e) {
                TreeEdges c = insert_leaf(t, e, k, node);
                iso::Structure s = structure_of(c);
                auto& bucket = buckets[iso::invariant(s)];
                bool dup = false;
                for (const auto& [idx, other] : bucket)
                    if (iso::find_isomorphism(s, other)) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                bucket.emplace_back(next.size(), std::move(s));
                next.push_back(std::move(c));
            }
        reps = std::move(next);
    }
    Integer fact = 1;
    for (int i = 2; i <= m - 1; ++i) fact *= i;
    for (const auto& t : reps) {
        DiscreteGraph tree = tree_graph(m, t);
        Integer aut = iso::automorphism_group(to_structure(tree, opt)).order;
        out.push_back({std::move(tree), fact / aut});
    }
    return out;
}

}  // namespace tgw
