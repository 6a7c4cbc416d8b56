#pragma once

#include "tgw/graph.hpp"
#include "tgw/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <vector>

namespace tgw {

/// Compact metric graph: a connected model with positive rational edge lengths. Legs are ignored.
class MetricGraph {
public:
    MetricGraph() = default;
    /// lengths are indexed like graph.edges().
    MetricGraph(DiscreteGraph graph, std::vector<Rational> lengths);

    const DiscreteGraph& graph() const { return graph_; }
    const std::vector<Rational>& lengths() const { return lengths_; }
    const Rational& length(int edgeIndex) const { return lengths_[edgeIndex]; }
    int genus() const { return graph_.genus(); }

private:
    DiscreteGraph graph_;
    std::vector<Rational> lengths_;
};

/// A point of a metric graph: a vertex, or an edge interior point at `offset` from the root of
/// edges()[edge].first.
struct Point {
    int vertex = -1;
    int edge = -1;
    Rational offset;

    static Point at_vertex(int v) { return Point{v, -1, 0}; }
    /// Point at distance `offset` from the root of half-edge `flag`; normalized, endpoints become vertices.
    static Point along(const MetricGraph& m, int flag, const Rational& offset);

    bool is_vertex() const { return vertex >= 0; }
    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& a, const Point& b) {
        if (a.is_vertex() != b.is_vertex()) return a.is_vertex();
        if (a.vertex != b.vertex) return a.vertex < b.vertex;
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.offset < b.offset;
    }
};

class Divisor {
public:
    void add(const Point& p, long long k);
    long long operator[](const Point& p) const;
    long long degree() const;
    bool is_effective() const;
    const std::map<Point, long long>& terms() const { return terms_; }
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator*(long long k) const;
    friend bool operator==(const Divisor&, const Divisor&) = default;

private:
    std::map<Point, long long> terms_;
};

Divisor canonical_divisor(const MetricGraph& m);

enum class Candidates {
    /// Every vertex of the unit subdivision.
    Subdivision,
    /// Model vertices plus one interior point per loop.
    ModelVertices,
};

struct RankOptions {
    long long maxVertices = 5000;
    Candidates candidates = Candidates::Subdivision;
};

/// The metric graph realised as a finite graph by subdividing every edge into unit segments
/// after scaling all lengths and the given points to integers.
class UnitSubdivision {
public:
    UnitSubdivision(const MetricGraph& m, const std::vector<Point>& points, long long maxVertices = 5000);

    int size() const { return static_cast<int>(adj_.size()); }
    const Integer& scale() const { return scale_; }
    int index_of(const Point& p) const;
    Point point_of(int v) const { return points_[v]; }
    const std::vector<int>& neighbours(int v) const { return adj_[v]; }
    std::vector<int> model_vertex_candidates() const;

    std::vector<long long> to_chips(const Divisor& d) const;
    /// q-reduced representative of chips (in place).
    void reduce(std::vector<long long>& chips, int q) const;
    bool has_effective(std::vector<long long> chips) const;

private:
    const MetricGraph* m_;
    Integer scale_;
    std::vector<std::vector<int>> adj_;
    std::vector<Point> points_;
    std::vector<int> vertexIndex_;                 // model vertex flag -> index
    std::vector<std::vector<int>> interior_;       // edge -> indices of interior vertices in order
};

/// Baker-Norine rank; -1 when the linear system is empty.
long long rank(const MetricGraph& m, const Divisor& d, const RankOptions& opt = {});

/// r(D) - r(K - D) - (deg D - g + 1); zero by Riemann-Roch.
long long riemann_roch_residual(const MetricGraph& m, const Divisor& d, const RankOptions& opt = {});

/// rank(g[x]) >= 1.
bool is_weierstrass(const MetricGraph& m, const Point& x, const RankOptions& opt = {});

}  // namespace tgw
