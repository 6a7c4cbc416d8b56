#pragma once

#include "tgw/divisors.hpp"
#include "tgw/graph.hpp"
#include "tgw/rational.hpp"

#include <vector>

namespace tgw {

/// A map of flag graphs source -> target with a positive local degree on every source flag.
/// Both halves of an edge carry the edge degree; a vertex carries its local degree.
struct Cover {
    DiscreteGraph source;
    DiscreteGraph target;
    std::vector<int> flagMap;
    std::vector<int> degree;

    int map(int f) const { return flagMap[f]; }
    /// Global degree (sum of local degrees over any target flag's fiber).
    int global_degree() const;
};

/// Checks morphism, non-contraction, harmonicity, constant fiber degree and local
/// Riemann-Hurwitz vanishing; throws the first violation.
void validate_cover(const Cover& c);

/// val(V) - 2 - d(V)(val(pi V) - 2) for each source vertex (all zero for admissible covers).
std::vector<std::pair<int, int>> riemann_hurwitz_residuals(const Cover& c);

/// lcm of the degrees of the source edges over target edge t (by target edges() index).
int edge_lcm(const Cover& c, int targetEdge);

/// Source edge e (by index) to target edge pi(e): lcm/d(e).
RationalMatrix f_matrix(const Cover& c);
/// Source edge e to target edge pi(e): 1/d(e).
RationalMatrix i_matrix(const Cover& c);
/// Diagonal of edge lcms on the target.
RationalMatrix lcm_matrix(const Cover& c);

/// Source lengths making pi a harmonic map of metric graphs: l(e) = l(pi e)/d(e).
std::vector<Rational> source_lengths(const Cover& c, const std::vector<Rational>& targetLengths);

/// Pullback and pushforward along a cover, with source metric from source_lengths.
Divisor pullback(const Cover& c, const MetricGraph& target, const MetricGraph& source, const Divisor& d);
Divisor pushforward(const Cover& c, const MetricGraph& target, const MetricGraph& source, const Divisor& d);

/// K_source - pi^* K_target on the realizations (legs forgotten); effective for admissible covers.
Divisor ramification_divisor(const Cover& c);

/// #legs + 2(g - 1) on the source minus deg times the same on the target, minus the local residuals.
/// Zero for every harmonic cover of a connected target.
int riemann_hurwitz_global(const Cover& c);

struct CoverStructureOptions {
    /// Color every target flag individually (automorphisms act trivially on the target).
    bool fixTarget = false;
    /// When the target is not fixed: target legs with these marks keep their own color, other
    /// legs share one.
    std::vector<int> distinguishedTargetMarks;
    /// Source flags colored individually.
    std::vector<int> fixedSourceFlags;
};

/// Nodes are source flags followed by target flags; maps are root, involution and the cover map.
iso::Structure cover_structure(const Cover& c, const CoverStructureOptions& opt = {});

}  // namespace tgw
