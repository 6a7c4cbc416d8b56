#pragma once

#include "tgw/divisors.hpp"
#include "tgw/enumeration.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tgw {

/// A cover together with an identification of its stabilized source with the model of the
/// metric graph, and the target edge parameters that realise the given lengths.
struct GwpWitness {
    int coverIndex = -1;
    /// Stable source flag -> model flag.
    iso::Mapping identification;
    RationalVector delta;
    Point point;
};

struct WitnessSet {
    std::vector<GwpWitness> witnesses;
    /// Covers whose solution has a zero component (lengths not generic).
    std::vector<int> degenerate;
};

/// Requires a legless trivalent model with 3g-3 edges and genus matching the enumeration.
WitnessSet fiber_witnesses(const MetricGraph& m, const EnumerationResult& covers);

/// Where the root of the heaviest leg lands in the metric graph.
Point locate_point(const MetricGraph& m, const Cover& c, const Stabilization& core,
                   const iso::Mapping& identification, const RationalVector& delta);

struct MarkedClass {
    int coverIndex = -1;
    std::vector<GwpWitness> members;
    Integer multiplicity;
    /// Smallest point of the class; `orbit` lists all points of its members.
    Point point;
    std::vector<Point> orbit;
    std::optional<bool> weierstrass;
};

/// Groups witnesses by symmetries of the cover and isometries of the metric graph.
std::vector<MarkedClass> marked_classes(const MetricGraph& m, const EnumerationResult& covers,
                                        const std::vector<GwpWitness>& witnesses);

struct GwpReport {
    int genus = 0;
    std::vector<MarkedClass> classes;
    std::vector<std::pair<Point, Integer>> pointTable;
    Integer total;
    Integer expected;
    bool genericityViolation = false;
    bool certified = false;
    std::vector<std::string> warnings;
};

struct GwpOptions {
    bool verifyRank = false;
    long long rankBudget = 5000;
    int workers = 0;
};

GwpReport count_gwp(const MetricGraph& m, const GwpOptions& opt = {});
/// Reuses an enumeration of the matching genus.
GwpReport count_gwp(const MetricGraph& m, const EnumerationResult& covers, const GwpOptions& opt = {});

/// Sum over the fully labelled fiber of weight * |det|; equals (3g-1)! ((g-2)!)^(3g-1) (g^3-g).
Integer pushforward_total(const MetricGraph& m, const EnumerationResult& covers);
Integer pushforward_total(int g, EnumerationMode mode = EnumerationMode::Quotient);
Integer expected_pushforward_total(int g);

/// Lengths p_i/q_i with distinct primes, reproducible from the seed.
std::vector<Rational> generic_lengths(int count, std::uint64_t seed);

/// Isometries of the metric graph as flag maps of its model.
std::vector<iso::Mapping> isometries(const MetricGraph& m);

}  // namespace tgw
