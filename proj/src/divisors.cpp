#include "tgw/divisors.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <functional>

namespace tgw {

MetricGraph::MetricGraph(DiscreteGraph graph, std::vector<Rational> lengths)
    : graph_(std::move(graph)), lengths_(std::move(lengths)) {
    if (lengths_.size() != graph_.edges().size())
        throw Error(ErrorKind::NonpositiveLength, "expected " + std::to_string(graph_.edges().size()) +
                                                      " lengths, got " + std::to_string(lengths_.size()));
    for (std::size_t e = 0; e < lengths_.size(); ++e)
        if (lengths_[e] <= 0)
            throw Error(ErrorKind::NonpositiveLength, "edge " + std::to_string(e) + " has length " + to_string(lengths_[e]));
    if (!graph_.is_connected()) throw Error(ErrorKind::UsageError, "metric graph must be connected");
}

Point Point::along(const MetricGraph& m, int flag, const Rational& offset) {
    const auto& g = m.graph();
    if (flag < 0 || flag >= g.num_flags() || !g.is_edge_flag(flag))
        throw Error(ErrorKind::UnknownFlag, "flag " + std::to_string(flag) + " is not an edge half");
    int e = g.edge_index(flag);
    const Rational& len = m.length(e);
    if (offset < 0 || offset > len)
        throw Error(ErrorKind::UsageError, "offset " + to_string(offset) + " outside edge of length " + to_string(len));
    Rational off = flag == g.edges()[e].first ? offset : len - offset;
    if (off == 0) return at_vertex(g.root(g.edges()[e].first));
    if (off == len) return at_vertex(g.root(g.edges()[e].second));
    return Point{-1, e, off};
}

void Divisor::add(const Point& p, long long k) {
    if (k == 0) return;
    auto& c = terms_[p];
    c += k;
    if (c == 0) terms_.erase(p);
}

long long Divisor::operator[](const Point& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

long long Divisor::degree() const {
    long long d = 0;
    for (const auto& [p, k] : terms_) d += k;
    return d;
}

bool Divisor::is_effective() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second >= 0; });
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (const auto& [p, k] : o.terms_) r.add(p, k);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const { return *this + o * -1; }

Divisor Divisor::operator*(long long k) const {
    Divisor r;
    for (const auto& [p, c] : terms_) r.add(p, c * k);
    return r;
}

Divisor canonical_divisor(const MetricGraph& m) {
    Divisor k;
    const auto& g = m.graph();
    for (int v : g.vertices()) k.add(Point::at_vertex(v), g.valence(v) - g.leg_valence(v) - 2);
    return k;
}

namespace {

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

}  // namespace

UnitSubdivision::UnitSubdivision(const MetricGraph& m, const std::vector<Point>& points, long long maxVertices)
    : m_(&m) {
    const auto& g = m.graph();
    scale_ = 1;
    for (const auto& l : m.lengths()) scale_ = lcm_int(scale_, denominator(l));
    for (const auto& p : points)
        if (!p.is_vertex()) scale_ = lcm_int(scale_, denominator(p.offset));
    for (const auto& l : m.lengths())
        if (l * scale_ < 2) {
            scale_ *= 2;
            break;
        }
    Integer total = static_cast<long>(g.vertices().size());
    for (const auto& l : m.lengths()) total += numerator(l * scale_) - 1;
    if (total > maxVertices)
        throw Error(ErrorKind::SubdivisionTooLarge,
                    "unit subdivision needs " + total.str() + " vertices (budget " + std::to_string(maxVertices) + ")");
    const int n = static_cast<int>(to_ll(total));
    adj_.assign(n, {});
    points_.reserve(n);
    vertexIndex_.assign(g.num_flags(), -1);
    for (int v : g.vertices()) {
        vertexIndex_[v] = static_cast<int>(points_.size());
        points_.push_back(Point::at_vertex(v));
    }
    interior_.assign(g.edges().size(), {});
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        long long segs = to_ll(numerator(m.length(e) * scale_));
        int prev = vertexIndex_[g.root(g.edges()[e].first)];
        for (long long k = 1; k < segs; ++k) {
            int idx = static_cast<int>(points_.size());
            points_.push_back(Point{-1, static_cast<int>(e), Rational(k) / Rational(scale_)});
            interior_[e].push_back(idx);
            adj_[prev].push_back(idx);
            adj_[idx].push_back(prev);
            prev = idx;
        }
        int last = vertexIndex_[g.root(g.edges()[e].second)];
        adj_[prev].push_back(last);
        adj_[last].push_back(prev);
    }
}

int UnitSubdivision::index_of(const Point& p) const {
    if (p.is_vertex()) return vertexIndex_.at(p.vertex);
    Rational k = p.offset * scale_;
    if (!is_integer(k))
        throw Error(ErrorKind::IrrationalSupport, "point off the subdivision lattice at offset " + to_string(p.offset));
    return interior_.at(p.edge).at(to_ll(numerator(k)) - 1);
}

std::vector<int> UnitSubdivision::model_vertex_candidates() const {
    const auto& g = m_->graph();
    std::vector<int> out;
    for (int v : g.vertices()) out.push_back(vertexIndex_[v]);
    for (std::size_t e = 0; e < g.edges().size(); ++e)
        if (g.root(g.edges()[e].first) == g.root(g.edges()[e].second)) out.push_back(interior_[e].front());
    return out;
}

std::vector<long long> UnitSubdivision::to_chips(const Divisor& d) const {
    std::vector<long long> chips(size(), 0);
    for (const auto& [p, k] : d.terms()) chips[index_of(p)] += k;
    return chips;
}

void UnitSubdivision::reduce(std::vector<long long>& chips, int q) const {
    const int n = size();
    // Push debts outward layer by layer so everything off q becomes non-negative.
    std::vector<int> dist(n, -1), order{q};
    dist[q] = 0;
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : adj_[order[i]])
            if (dist[w] < 0) {
                dist[w] = dist[order[i]] + 1;
                order.push_back(w);
            }
    std::vector<std::size_t> layerStart{0};
    for (std::size_t i = 1; i < order.size(); ++i)
        if (dist[order[i]] != dist[order[i - 1]]) layerStart.push_back(i);
    layerStart.push_back(order.size());
    for (std::size_t L = layerStart.size() - 2; L >= 1; --L) {
        long long times = 0;
        for (std::size_t i = layerStart[L]; i < layerStart[L + 1]; ++i) {
            int v = order[i];
            if (chips[v] >= 0) continue;
            long long inward = 0;
            for (int w : adj_[v]) inward += dist[w] < dist[v];
            times = std::max(times, (-chips[v] + inward - 1) / inward);
        }
        if (times == 0) continue;
        // fire the ball of radius L-1
        for (std::size_t i = layerStart[L - 1]; i < layerStart[L]; ++i) {
            int u = order[i];
            for (int w : adj_[u])
                if (dist[w] == static_cast<int>(L)) {
                    chips[w] += times;
                    chips[u] -= times;
                }
        }
    }
    // Dhar burning; fire the unburnt set as often as it stays legal.
    std::vector<int> burnt(n), edgesToFire(n), queue;
    for (;;) {
        std::fill(burnt.begin(), burnt.end(), 0);
        std::fill(edgesToFire.begin(), edgesToFire.end(), 0);
        queue.assign(1, q);
        burnt[q] = 1;
        for (std::size_t i = 0; i < queue.size(); ++i)
            for (int w : adj_[queue[i]]) {
                if (burnt[w]) continue;
                if (++edgesToFire[w] > chips[w]) {
                    burnt[w] = 1;
                    queue.push_back(w);
                }
            }
        if (static_cast<int>(queue.size()) == n) return;
        long long times = -1;
        for (int v = 0; v < n; ++v)
            if (!burnt[v] && edgesToFire[v] > 0) {
                long long t = chips[v] / edgesToFire[v];
                if (times < 0 || t < times) times = t;
            }
        for (int v = 0; v < n; ++v) {
            if (burnt[v] || edgesToFire[v] == 0) continue;
            chips[v] -= times * edgesToFire[v];
            for (int w : adj_[v])
                if (burnt[w]) chips[w] += times;
        }
    }
}

bool UnitSubdivision::has_effective(std::vector<long long> chips) const {
    int q = static_cast<int>(std::min_element(chips.begin(), chips.end()) - chips.begin());
    if (chips[q] >= 0) return true;
    reduce(chips, q);
    return chips[q] >= 0;
}

namespace {

std::vector<Point> support(const Divisor& d) {
    std::vector<Point> out;
    for (const auto& [p, k] : d.terms()) out.push_back(p);
    return out;
}

// True if every effective E of degree k on the candidates keeps |D - E| non-empty.
bool all_subtractions_effective(const UnitSubdivision& s, std::vector<long long>& chips,
                                const std::vector<int>& cand, int k, std::size_t start) {
    if (k == 0) return s.has_effective(chips);
    for (std::size_t i = start; i < cand.size(); ++i) {
        --chips[cand[i]];
        bool ok = all_subtractions_effective(s, chips, cand, k - 1, i);
        ++chips[cand[i]];
        if (!ok) return false;
    }
    return true;
}

}  // namespace

long long rank(const MetricGraph& m, const Divisor& d, const RankOptions& opt) {
    UnitSubdivision s(m, support(d), opt.maxVertices);
    auto chips = s.to_chips(d);
    if (!s.has_effective(chips)) return -1;
    std::vector<int> cand;
    if (opt.candidates == Candidates::ModelVertices) {
        cand = s.model_vertex_candidates();
    } else {
        cand.resize(s.size());
        for (int i = 0; i < s.size(); ++i) cand[i] = i;
    }
    long long k = 1;
    while (k <= d.degree() && all_subtractions_effective(s, chips, cand, static_cast<int>(k), 0)) ++k;
    return k - 1;
}

long long riemann_roch_residual(const MetricGraph& m, const Divisor& d, const RankOptions& opt) {
    Divisor k = canonical_divisor(m);
    return rank(m, d, opt) - rank(m, k - d, opt) - (d.degree() - m.genus() + 1);
}

bool is_weierstrass(const MetricGraph& m, const Point& x, const RankOptions& opt) {
    Divisor d;
    d.add(x, m.genus());
    UnitSubdivision s(m, {x}, opt.maxVertices);
    auto chips = s.to_chips(d);
    std::vector<int> cand;
    if (opt.candidates == Candidates::ModelVertices) {
        cand = s.model_vertex_candidates();
    } else {
        cand.resize(s.size());
        for (int i = 0; i < s.size(); ++i) cand[i] = i;
    }
    return all_subtractions_effective(s, chips, cand, 1, 0);
}

}  // namespace tgw
