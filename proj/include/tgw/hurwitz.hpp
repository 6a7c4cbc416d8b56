#pragma once

#include "tgw/cover.hpp"
#include "tgw/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tgw {

/// Parts in non-increasing order.
using Partition = std::vector<int>;

Partition make_partition(std::vector<int> parts);
std::vector<Partition> partitions_of(int d);
int sum_of(const Partition& p);
/// "(2,1,1)"
std::string to_string(const Partition& p);
Partition parse_partition(std::string_view s);
/// "(2,1,1);(2,1,1);(4)"
std::vector<Partition> parse_profiles(std::string_view s);

/// Genus-0 Hurwitz number: (1/d!) times the number of transitive tuples in S_d with the given
/// cycle types and product 1. Memoized and thread-safe. Zero when the tuple cannot have genus 0.
Rational hurwitz_genus0(int d, const std::vector<Partition>& profiles);
void clear_hurwitz_cache();
std::size_t hurwitz_cache_size();

/// H(V) for a source vertex: the Hurwitz number of its local ramification over the target vertex.
Rational local_hurwitz_number(const Cover& c, int v);
/// Product of k! over groups of k flags at v with equal degree over the same target flag.
Integer cf_factor(const Cover& c, int v);
struct VertexWeight {
    int vertex;
    Rational hurwitz;
    Integer cf;
};

struct WeightReport {
    Rational weight;
    std::vector<VertexWeight> perVertex;
    Integer edgeProduct;
    Integer lcmDenominator;
};

/// weight = edgeProduct * prod_V H(V) CF(V) / lcmDenominator, lcmDenominator = prod_t lcm_t.
WeightReport standard_weight(const Cover& c);

/// Throws WrongProfile unless the target is a marked tree with 3g legs and the fiber over leg 1
/// is one leg of degree g while every other leg has fiber (2,1,...,1).
void require_weierstrass_profile(const Cover& c);

struct Stabilizers {
    Integer horizontal;  // distinct target relabelings fixing the point
    Integer vertical;    // source-only symmetries fixing the point
};

/// Symmetries of the cover (target legs other than leg 1 interchangeable) that act trivially
/// on the stabilized source, split into their target part and their kernel.
/// With no core flags this is the stabilizer of the cover's isomorphism class.
Stabilizers stabilizers(const Cover& c, const std::vector<int>& coreSourceFlags = {});

/// weight * |det| / (hs * vs); throws NonIntegralMultiplicity unless integral.
Integer cover_multiplicity(const Rational& weight, const Rational& det, const Stabilizers& s);

}  // namespace tgw
