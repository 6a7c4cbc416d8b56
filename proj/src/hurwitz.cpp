#include "tgw/hurwitz.hpp"

#include "tgw/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace tgw {

Partition make_partition(std::vector<int> parts) {
    for (int p : parts)
        if (p <= 0) throw Error(ErrorKind::ParseError, "partition parts must be positive");
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

namespace {

void partitions_rec(int left, int maxPart, Partition& cur, std::vector<Partition>& out) {
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(left, maxPart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(left - p, p, cur, out);
        cur.pop_back();
    }
}

using Perm = std::vector<int>;

Partition cycle_type(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    Partition t;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        t.push_back(len);
    }
    return make_partition(t);
}

bool transitive(int d, const std::vector<Perm>& gens) {
    std::vector<char> seen(d, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const auto& g : gens)
            if (!seen[g[x]]) {
                seen[g[x]] = 1;
                ++count;
                stack.push_back(g[x]);
            }
    }
    return count == d;
}

// Permutation with the given cycle type, cycles laid out consecutively.
Perm representative(int d, const Partition& type) {
    Perm p(d);
    int start = 0;
    for (int len : type) {
        for (int i = 0; i < len; ++i) p[start + i] = start + (i + 1) % len;
        start += len;
    }
    return p;
}

struct Cache {
    std::mutex mu;
    std::map<std::pair<int, std::vector<Partition>>, Rational> values;
    std::map<int, std::map<Partition, std::vector<Perm>>> classes;
};

Cache& cache() {
    static Cache c;
    return c;
}

const std::map<Partition, std::vector<Perm>>& conjugacy_classes(int d) {
    auto& c = cache();
    auto it = c.classes.find(d);
    if (it != c.classes.end()) return it->second;
    std::map<Partition, std::vector<Perm>> out;
    Perm p(d);
    std::iota(p.begin(), p.end(), 0);
    do out[cycle_type(p)].push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return c.classes.emplace(d, std::move(out)).first->second;
}

Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// Counts tuples (s_1..s_k) with s_i of type profiles[i], s_1...s_k = 1, transitive.
Integer count_tuples(int d, const std::vector<Partition>& profiles,
                     const std::map<Partition, std::vector<Perm>>& classes) {
    const int k = static_cast<int>(profiles.size());
    // Conjugation acts transitively on the first class: fix s_1, multiply by its class size.
    Perm first = representative(d, profiles[0]);
    Integer classSize = static_cast<long>(classes.at(profiles[0]).size());
    if (k == 1) {
        bool ok = profiles[0] == Partition(d, 1) && transitive(d, {first});
        return ok ? classSize : Integer(0);
    }
    std::vector<Perm> chosen{first};
    Integer count = 0;
    auto compose = [d](const Perm& a, const Perm& b) {  // apply a then b
        Perm r(d);
        for (int i = 0; i < d; ++i) r[i] = b[a[i]];
        return r;
    };
    std::function<void(int, const Perm&)> rec = [&](int i, const Perm& prod) {
        if (i == k - 1) {
            Perm last(d);
            for (int x = 0; x < d; ++x) last[prod[x]] = x;
            if (cycle_type(last) != profiles[k - 1]) return;
            chosen.push_back(last);
            if (transitive(d, chosen)) ++count;
            chosen.pop_back();
            return;
        }
        for (const auto& s : classes.at(profiles[i])) {
            chosen.push_back(s);
            rec(i + 1, compose(prod, s));
            chosen.pop_back();
        }
    };
    rec(1, first);
    return count * classSize;
}

}  // namespace

std::vector<Partition> partitions_of(int d) {
    std::vector<Partition> out;
    Partition cur;
    partitions_rec(d, d, cur, out);
    return out;
}

int sum_of(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::string to_string(const Partition& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

Partition parse_partition(std::string_view s) {
    auto b = s.find('('), e = s.rfind(')');
    if (b == std::string_view::npos || e == std::string_view::npos || e < b)
        throw Error(ErrorKind::ParseError, "partition must look like (2,1,1): '" + std::string(s) + "'");
    std::vector<int> parts;
    std::string cur;
    for (char ch : s.substr(b + 1, e - b - 1)) {
        if (ch == ',') {
            parts.push_back(std::stoi(cur));
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw Error(ErrorKind::ParseError, "bad character in partition '" + std::string(s) + "'");
            cur += ch;
        }
    }
    if (cur.empty()) throw Error(ErrorKind::ParseError, "empty part in '" + std::string(s) + "'");
    parts.push_back(std::stoi(cur));
    return make_partition(parts);
}

std::vector<Partition> parse_profiles(std::string_view s) {
    std::vector<Partition> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto semi = s.find(';', start);
        auto piece = s.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        out.push_back(parse_partition(piece));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
    }
    return out;
}

Rational hurwitz_genus0(int d, const std::vector<Partition>& profiles) {
    if (d <= 0) throw Error(ErrorKind::ProfileSumMismatch, "degree must be positive");
    if (profiles.empty()) throw Error(ErrorKind::ProfileSumMismatch, "no profiles given");
    std::vector<Partition> key;
    for (const auto& p : profiles) {
        if (sum_of(p) != d)
            throw Error(ErrorKind::ProfileSumMismatch, "profile " + to_string(p) + " does not sum to " + std::to_string(d));
        key.push_back(make_partition(p));
    }
    int branch = 0;
    for (const auto& p : key) branch += d - static_cast<int>(p.size());
    if (branch != 2 * d - 2) return 0;
    // Drop unramified profiles: they contribute the identity.
    std::vector<Partition> ramified;
    for (const auto& p : key)
        if (static_cast<int>(p.size()) != d) ramified.push_back(p);
    if (ramified.empty()) ramified.push_back(Partition(d, 1));
    std::sort(ramified.begin(), ramified.end());
    auto& c = cache();
    std::lock_guard lock(c.mu);
    auto cacheKey = std::make_pair(d, ramified);
    if (auto it = c.values.find(cacheKey); it != c.values.end()) return it->second;
    if (d > 8) throw Error(ErrorKind::GenusCapExceeded, "Hurwitz numbers are limited to degree <= 8");
    const auto& classes = conjugacy_classes(d);
    // The first element is fixed and the last is determined, so put the two largest classes there.
    std::vector<Partition> order = ramified;
    std::stable_sort(order.begin(), order.end(), [&](const Partition& a, const Partition& b) {
        return classes.at(a).size() > classes.at(b).size();
    });
    if (order.size() > 2) std::rotate(order.begin() + 1, order.begin() + 2, order.end());
    Integer count = count_tuples(d, order, classes);
    Rational value(count, factorial(d));
    c.values.emplace(cacheKey, value);
    return value;
}

void clear_hurwitz_cache() {
    auto& c = cache();
    std::lock_guard lock(c.mu);
    c.values.clear();
}

std::size_t hurwitz_cache_size() {
    auto& c = cache();
    std::lock_guard lock(c.mu);
    return c.values.size();
}

Rational local_hurwitz_number(const Cover& c, int v) {
    int tv = c.flagMap[v];
    std::vector<Partition> profiles;
    for (int t : c.target.flags_at(tv)) {
        std::vector<int> parts;
        for (int h : c.source.flags_at(v))
            if (c.flagMap[h] == t) parts.push_back(c.degree[h]);
        profiles.push_back(make_partition(parts));
    }
    return hurwitz_genus0(c.degree[v], profiles);
}

Integer cf_factor(const Cover& c, int v) {
    std::map<std::pair<int, int>, int> groups;
    for (int h : c.source.flags_at(v)) ++groups[{c.flagMap[h], c.degree[h]}];
    Integer r = 1;
    for (const auto& [key, k] : groups) r *= factorial(k);
    return r;
}

WeightReport standard_weight(const Cover& c) {
    WeightReport r;
    r.edgeProduct = 1;
    r.lcmDenominator = 1;
    for (auto [a, b] : c.source.edges()) r.edgeProduct *= c.degree[a];
    Rational w = Rational(r.edgeProduct);
    for (int v : c.source.vertices()) {
        VertexWeight vw{v, local_hurwitz_number(c, v), cf_factor(c, v)};
        w *= vw.hurwitz * Rational(vw.cf);
        r.perVertex.push_back(std::move(vw));
    }
    for (std::size_t t = 0; t < c.target.edges().size(); ++t) r.lcmDenominator *= edge_lcm(c, static_cast<int>(t));
    r.weight = w / Rational(r.lcmDenominator);
    return r;
}

void require_weierstrass_profile(const Cover& c) {
    const auto& t = c.target;
    const int m = static_cast<int>(t.legs().size());
    if (!t.is_marked() || m % 3 != 0 || m < 6 || t.genus() != 0)
        throw Error(ErrorKind::WrongProfile, "target must be a marked tree with 3g legs, g >= 2");
    const int g = m / 3;
    for (int i = 1; i <= m; ++i) {
        std::vector<int> parts;
        for (int f = 0; f < c.source.num_flags(); ++f)
            if (c.flagMap[f] == t.marking()[i - 1]) parts.push_back(c.degree[f]);
        Partition want = i == 1 ? Partition{g} : make_partition([&] {
            std::vector<int> p(g - 1, 1);
            p[0] = 2;
            return p;
        }());
        if (make_partition(parts) != want)
            throw Error(ErrorKind::WrongProfile, "leg " + std::to_string(i) + " has fiber " + to_string(make_partition(parts)));
    }
}

Stabilizers stabilizers(const Cover& c, const std::vector<int>& coreSourceFlags) {
    require_weierstrass_profile(c);
    CoverStructureOptions opt;
    opt.distinguishedTargetMarks = {1};
    opt.fixedSourceFlags = coreSourceFlags;
    Integer all = iso::automorphism_group(cover_structure(c, opt)).order;
    opt.fixTarget = true;
    Integer vertical = iso::automorphism_group(cover_structure(c, opt)).order;
    return {all / vertical, vertical};
}

Integer cover_multiplicity(const Rational& weight, const Rational& det, const Stabilizers& s) {
    Rational m = weight * abs(det) / Rational(s.horizontal * s.vertical);
    if (!is_integer(m))
        throw Error(ErrorKind::NonIntegralMultiplicity, "cover multiplicity " + to_string(m) + " is not an integer");
    return numerator(m);
}

}  // namespace tgw
