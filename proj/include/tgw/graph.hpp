#pragma once

#include "tgw/structure.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tgw {

/// A graph given by flags 0..n-1, a root map and an involution with involution(root(f)) == root(f).
/// Vertices are the image of root; legs are half-edges fixed by the involution.
class DiscreteGraph {
public:
    DiscreteGraph() = default;
    /// marking[i] is the leg flag carrying mark i+1 (empty: unmarked).
    /// legWeight is per flag, 0 where absent (empty: no weights).
    DiscreteGraph(std::vector<int> root, std::vector<int> involution, std::vector<int> marking = {},
                  std::vector<int> legWeight = {}, std::vector<long long> labels = {});

    int num_flags() const { return static_cast<int>(root_.size()); }
    int root(int f) const { return root_[f]; }
    int involution(int f) const { return inv_[f]; }
    bool is_vertex(int f) const { return root_[f] == f; }
    bool is_leg(int f) const { return !is_vertex(f) && inv_[f] == f; }
    bool is_edge_flag(int f) const { return !is_vertex(f) && inv_[f] != f; }

    const std::vector<int>& vertices() const { return vertices_; }
    /// Edges as flag pairs (a, b) with a < b, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& legs() const { return legs_; }
    /// Half-edges (edge flags and legs) rooted at v, ascending.
    const std::vector<int>& flags_at(int v) const { return at_[v]; }
    int valence(int v) const { return static_cast<int>(at_[v].size()); }
    /// Number of legs at v.
    int leg_valence(int v) const;

    const std::vector<int>& marking() const { return marking_; }
    bool is_marked() const { return !marking_.empty(); }
    /// Mark (1-based) of a leg, 0 if unmarked.
    int mark_of(int f) const { return markOf_.empty() ? 0 : markOf_[f]; }
    int leg_weight(int f) const { return weight_.empty() ? 0 : weight_[f]; }
    bool has_leg_weights() const { return !weight_.empty(); }
    const std::vector<int>& leg_weights() const { return weight_; }
    long long label(int f) const { return labels_.empty() ? f : labels_[f]; }
    const std::vector<long long>& labels() const { return labels_; }
    /// Dense index of an external label, -1 if absent.
    int flag_of_label(long long label) const;

    /// Index of the edge containing half-edge f in edges().
    int edge_index(int f) const { return edgeIndex_[f]; }
    int other_end(int f) const { return root_[inv_[f]]; }

    int num_components() const;
    int genus() const;
    bool is_connected() const { return num_components() == 1; }
    bool is_trivalent() const;

    const std::vector<int>& root_map() const { return root_; }
    const std::vector<int>& involution_map() const { return inv_; }

private:
    std::vector<int> root_, inv_, marking_, markOf_, weight_;
    std::vector<long long> labels_;
    std::vector<int> vertices_, legs_, edgeIndex_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> at_;
};

struct ContractResult {
    DiscreteGraph graph;
    /// old flag -> new flag, -1 if the flag disappeared.
    std::vector<int> flagMap;
};

/// Contracts the forest spanned by the given edges (each named by either half-edge).
ContractResult contract(const DiscreteGraph& g, const std::vector<int>& edgeFlags);

/// Result of deleting legs, pruning trees and smoothing 2-valent vertices.
struct Stabilization {
    DiscreteGraph graph;
    /// stable flag -> source flag: vertices to vertices, a stable half-edge to the first source
    /// half-edge of its path seen from that end.
    std::vector<int> origin;
    /// For each stable edge (by edges() index) the source half-edges traversed from edges()[i].first.
    std::vector<std::vector<int>> paths;
    /// Source edges (by edges() index) lying on no path.
    std::vector<int> expunged;
    struct Location {
        int stableVertex = -1;  // >=0: the source vertex survives as this stable vertex
        int edge = -1;          // else: lies on stable edge `edge` after `step` path edges
        int step = 0;
    };
    /// For each source vertex flag, where it (or the core point its pruned tree hangs from) ends up.
    std::vector<Location> location;
};

/// Requires a connected graph of genus >= 2.
Stabilization stabilize(const DiscreteGraph& g);

struct StructureOptions {
    bool useMarking = true;
    bool useLegWeights = true;
    /// When useMarking, the legs with these marks stay individually colored; others share a color.
    /// Empty means all marks are distinguished.
    std::vector<int> distinguishedMarks;
};

iso::Structure to_structure(const DiscreteGraph& g, const StructureOptions& opt = {});

/// All flag bijections preserving root, involution and (if both marked) the marking.
std::vector<iso::Mapping> find_isomorphisms(const DiscreteGraph& a, const DiscreteGraph& b);

/// Loop-free subgraph test helpers.
bool is_forest(const DiscreteGraph& g, const std::vector<int>& edgeFlags);

namespace families {

/// Two loops joined by a bridge.
DiscreteGraph dumbbell();
/// The graph O_g (genus g >= 2): g loops hanging off a caterpillar; vertex names in `names` if given.
DiscreteGraph loops_on_caterpillar(int g, std::vector<std::string>* names = nullptr);
/// The tree T_g with 3g marked legs; legs 3i-2, 3i-1 at B_i' and 3i at B_i.
DiscreteGraph caterpillar_tree(int g, std::vector<std::string>* names = nullptr);
/// One vertex with one loop.
DiscreteGraph circle();
/// Two vertices joined by three edges.
DiscreteGraph theta();
/// Complete graph on four vertices.
DiscreteGraph k4();
/// Graph from vertex count and an edge list of vertex pairs (loops allowed); no legs.
DiscreteGraph from_edge_list(int numVertices, const std::vector<std::pair<int, int>>& edges);

}  // namespace families

enum class TreeMode { Labelled, Interchangeable };

struct TreeEntry {
    DiscreteGraph tree;
    /// Number of labelled trees represented (1 in labelled mode).
    Integer orbitSize;
};

/// Trivalent trees with m >= 3 marked legs. Interchangeable mode lists one tree per class
/// under permutations of legs 2..m.
std::vector<TreeEntry> enumerate_trivalent_trees(int m, TreeMode mode);

}  // namespace tgw
