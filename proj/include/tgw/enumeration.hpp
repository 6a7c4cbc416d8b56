#pragma once

#include "tgw/cover.hpp"
#include "tgw/graph.hpp"
#include "tgw/hurwitz.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tgw {

/// One source vertex over a trivalent target vertex: its degree and the partition it sees in
/// each of the three target directions.
struct LocalBlock {
    int degree = 0;
    std::array<Partition, 3> parts;
    friend auto operator<=>(const LocalBlock&, const LocalBlock&) = default;
};

/// The fiber over a target vertex: blocks in sorted order.
using LocalCover = std::vector<LocalBlock>;

/// All fibers of total degree d over a trivalent vertex. A fixed direction must see exactly the
/// given partition; a free direction may see any partition of d. Every block satisfies local
/// Riemann-Hurwitz (sum of lengths = degree + 2) and has a nonzero Hurwitz number.
std::vector<LocalCover> local_covers(int d, const std::array<std::optional<Partition>, 3>& directions);

/// Fiber profile for target leg `mark` (1-based) in genus g: (g) for leg 1, (2,1,...,1) otherwise.
Partition weierstrass_profile(int g, int mark);

/// All admissible covers of the marked trivalent tree with the Weierstrass profile, one per
/// isomorphism class over the identity of the target. Source legs are marked leg by leg,
/// heavier legs first.
std::vector<Cover> covers_over_tree(const DiscreteGraph& tree, int g);

enum class EnumerationMode { Quotient, Labelled };

struct CoverRecord {
    Cover cover;
    int treeIndex = 0;
    /// Number of covers with fully labelled legs in this class.
    Integer orbitSize;
    /// |A|: symmetries of the cover allowing target legs 2..3g to move.
    Integer symmetryOrder;
    std::vector<iso::Mapping> symmetryGenerators;
    /// Symmetries fixing the target and every source leg.
    Integer legFixingOrder;
    bool contributing = false;
    std::optional<Stabilization> core;
    /// Stable source edges by target edges.
    RationalMatrix ftF;
    Rational det;
    WeightReport weight;
    Stabilizers stab;
    Integer multiplicity;
};

struct EnumerationResult {
    int genus = 0;
    EnumerationMode mode = EnumerationMode::Quotient;
    /// Covers with a singular or non-maximal stabilized source were dropped.
    bool contributingOnly = false;
    std::vector<TreeEntry> trees;
    std::vector<CoverRecord> covers;
};

struct EnumerationOptions {
    EnumerationMode mode = EnumerationMode::Quotient;
    /// Defaults to the TW_WORKERS environment variable (1 if unset).
    int workers = 0;
    /// Skip symmetry and weight computations for covers that cannot contribute, and drop them.
    bool contributingOnly = false;
};

EnumerationResult enumerate_all(int g, const EnumerationOptions& opt);
/// Every cover, contributing or not.
EnumerationResult enumerate_all(int g, EnumerationMode mode, int workers = 0);

/// Order of the group relabelling target legs 2..3g and the weight-1 source legs in each fiber.
Integer labelling_group_order(int g);

/// Source half-edges and vertices that survive stabilization (vertices and path flags).
std::vector<int> core_flags(const Cover& c, const Stabilization& st);

/// (ft o F)(h, t): sum over the path of stable edge h of lcm_t/d(e) for source edges over t.
RationalMatrix stabilized_f_matrix(const Cover& c, const Stabilization& st);

// Structural checks on covers with the Weierstrass profile. Each returns an empty string when the
// cover passes, otherwise a description of the first violation.

/// Fibers over target vertices carrying two legs: a single vertex of degree g when one of the legs
/// is leg 1, else one vertex of degree 2 and the rest of degree 1.
std::string check_leg_pair_fibers(const Cover& c);

/// Source vertices and edges pruned away when the legs are forgotten have degree and weight 1.
std::string check_expunged(const Cover& c, const Stabilization& st);

enum class LoopCase { A, B, C, None };

/// Case of the image of a source loop vertex (a stable vertex carrying a loop). Its target vertex
/// t has one leg and two edges; e1 is the edge towards a vertex W with two legs, e2 the other.
///   A: leg 1 at W, two source edges over e1 with weights summing to g, (g) over e2.
///   B: leg 1 at t, (1,...,1) over e1, (g) over e2.
///   C: leg 1 at neither, (1,...,1) over e1, (2,1,...,1) over e2.
LoopCase classify_loop_vertex(const Cover& c, const Stabilization& st, int stableVertex);

/// Every loop vertex of the stable source falls into one of the cases above.
std::string check_loop_vertices(const Cover& c, const Stabilization& st);

/// For a stable source isomorphic to O_g: one bridge of weight g and the others of weight 2, the
/// edges meeting a bridge at its spine end satisfy a + b = g + 1 (heavy bridge) or |a - b| = 1,
/// every spine edge and bridge sees the profile (w,1,...,1) and loops are made of weight-1 edges
/// unless they hang off the heavy bridge, where two edges with weights summing to g may occur.
/// Other stable sources are reported as a violation.
std::string check_loop_weights(const Cover& c, const Stabilization& st);

bool is_loops_on_caterpillar(const DiscreteGraph& stable, int g);

}  // namespace tgw
