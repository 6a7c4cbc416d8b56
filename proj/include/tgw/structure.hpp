#pragma once

// Isomorphism search for finite sets carrying a few unary maps and a node coloring.
// Graphs, covers and partial covers are all encoded this way.

#include "tgw/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tgw::iso {

struct Structure {
    int size = 0;
    /// Each map has length `size`; entries are node indices or -1 when undefined.
    std::vector<std::vector<int>> maps;
    std::vector<std::uint64_t> colors;
};

/// mapping[x] is the image of node x.
using Mapping = std::vector<int>;

std::uint64_t mix(std::uint64_t h, std::uint64_t v);

/// Isomorphism invariant. Equal structures up to isomorphism hash equal.
std::uint64_t invariant(const Structure& s);

/// When color refinement separates every node: the structure relabelled in refined-color order.
/// Two such certificates are equal exactly when the structures are isomorphic.
std::optional<std::vector<std::uint64_t>> discrete_certificate(const Structure& s);

std::optional<Mapping> find_isomorphism(const Structure& a, const Structure& b);

/// Enumerates isomorphisms a -> b. The callback returns false to stop.
void for_each_isomorphism(const Structure& a, const Structure& b,
                          const std::function<bool(const Mapping&)>& visit);

std::vector<Mapping> all_isomorphisms(const Structure& a, const Structure& b);

struct Group {
    Integer order;
    std::vector<Mapping> generators;
};

Group automorphism_group(const Structure& s);

/// Orbits of the group generated by `gens` acting on {0..n-1}; each orbit sorted, list sorted by minimum.
std::vector<std::vector<int>> orbits(int n, const std::vector<Mapping>& gens);

bool is_isomorphism(const Structure& a, const Structure& b, const Mapping& m);

}  // namespace tgw::iso
