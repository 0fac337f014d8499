#pragma once

// Exact-rational little-n-cubes configurations: G(A)/F(A) membership,
// canonical realization, decomposability in both the free-axis and the
// fixed-axis (Milgram) sense, barycentric shrinking, pairwise G-constraint
// compatibility, and the cubes operad composition.

#include <mol/coherence.hpp>
#include <mol/enumeration.hpp>
#include <mol/expression.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace mol {

using Rational = boost::multiprecision::cpp_rational;

inline std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1)
        os << "/" << boost::multiprecision::denominator(r);
    return os.str();
}

inline Rational rational_from_str(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

/// An axis-aligned box inside the unit n-cube with nonempty interior.
struct Box {
    std::vector<std::pair<Rational, Rational>> iv;  // per axis [u, v]

    int n() const { return static_cast<int>(iv.size()); }

    void validate() const {
        for (const auto& [u, v] : iv)
            if (!(0 <= u && u < v && v <= 1))
                throw std::invalid_argument("box interval must satisfy 0 <= u < v <= 1");
    }

    Rational length(int axis) const { return iv[axis].second - iv[axis].first; }

    bool interior_disjoint(const Box& o) const {
        for (int i = 0; i < n(); ++i)
            if (iv[i].second <= o.iv[i].first || o.iv[i].second <= iv[i].first) return true;
        return false;
    }

    bool operator==(const Box&) const = default;
};

/// k labeled boxes with pairwise disjoint interiors.
struct Configuration {
    int n = 0;
    std::vector<int> labels;
    std::vector<Box> boxes;

    int k() const { return static_cast<int>(labels.size()); }

    const Box& box_of(int label) const {
        for (int i = 0; i < k(); ++i)
            if (labels[i] == label) return boxes[i];
        throw std::invalid_argument("no box labeled " + std::to_string(label));
    }

    void validate() const {
        if (labels.size() != boxes.size())
            throw std::invalid_argument("labels/boxes size mismatch");
        for (const Box& b : boxes) {
            if (b.n() != n) throw std::invalid_argument("box dimension mismatch");
            b.validate();
        }
        std::set<int> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size()) throw std::invalid_argument("duplicate box label");
        for (std::size_t i = 0; i < boxes.size(); ++i)
            for (std::size_t j = i + 1; j < boxes.size(); ++j)
                if (!boxes[i].interior_disjoint(boxes[j]))
                    throw std::invalid_argument(
                        "boxes " + std::to_string(labels[i]) + " and " +
                        std::to_string(labels[j]) + " have overlapping interiors");
    }

    nlohmann::json to_json() const {
        nlohmann::json bs = nlohmann::json::array();
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            nlohmann::json ivs = nlohmann::json::array();
            for (const auto& [u, v] : boxes[i].iv)
                ivs.push_back({rational_str(u), rational_str(v)});
            bs.push_back({{"label", labels[i]}, {"intervals", ivs}});
        }
        return {{"n", n}, {"boxes", bs}};
    }

    static Configuration from_json(const nlohmann::json& j) {
        Configuration c;
        c.n = j.at("n").get<int>();
        for (const auto& bj : j.at("boxes")) {
            c.labels.push_back(bj.at("label").get<int>());
            Box b;
            for (const auto& ivj : bj.at("intervals"))
                b.iv.emplace_back(rational_from_str(ivj.at(0).get<std::string>()),
                                  rational_from_str(ivj.at(1).get<std::string>()));
            c.boxes.push_back(std::move(b));
        }
        c.validate();
        return c;
    }

    /// SVG for n = 2 on the unit viewport, labels centered.
    std::string to_svg(int size_px = 400) const {
        if (n != 2) throw std::invalid_argument("svg output is for n = 2 only");
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << size_px << " "
           << size_px << "\">\n";
        os << "  <rect x=\"0\" y=\"0\" width=\"" << size_px << "\" height=\"" << size_px
           << "\" fill=\"white\" stroke=\"black\"/>\n";
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            const Box& b = boxes[i];
            double x = static_cast<double>(b.iv[0].first) * size_px;
            double w = static_cast<double>(b.length(0)) * size_px;
            double y = (1.0 - static_cast<double>(b.iv[1].second)) * size_px;
            double h = static_cast<double>(b.length(1)) * size_px;
            os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
               << h << "\" fill=\"none\" stroke=\"black\"/>\n";
            os << "  <text x=\"" << x + w / 2 << "\" y=\"" << y + h / 2
               << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << labels[i]
               << "</text>\n";
        }
        os << "</svg>\n";
        return os.str();
    }
};

/// c_a <_i c_b (separating hyperplane perpendicular to axis i): the a box
/// ends before the b box starts on axis i.
inline bool before_on_axis(const Box& a, const Box& b, int axis) {
    return a.iv[axis].second <= b.iv[axis].first;
}

/// Membership in G(A): every pair relation of A is satisfied geometrically.
inline bool in_G(const Configuration& c, const Expression& a, int n) {
    std::vector<int> want = leaves(a);
    std::vector<int> have = c.labels;
    std::sort(have.begin(), have.end());
    if (want != have) throw std::invalid_argument("in_G: configuration labels differ from leaves");
    const PairTable table = pair_table(a, n);
    for (const auto& [pr, rel] : table.rels()) {
        int first = rel.first;
        int second = first == pr.first ? pr.second : pr.first;
        if (!before_on_axis(c.box_of(first), c.box_of(second), rel.op - 1)) return false;
    }
    return true;
}

/// Membership in F(A) = union of G(X) over X mapping into A (the downset
/// in all of M_n(k)).
inline bool in_F(const Configuration& c, const Expression& a, int n) {
    PairTable ta = pair_table(a, n);
    for (const Expression& x : enumerate_set(n, leaves(a)))
        if (k_leq(pair_table(x, n), ta) && in_G(c, x, n)) return true;
    return false;
}

/// Canonical point of G(A): recursively slice the current box into equal
/// slabs along the node's axis, one slab per child.
inline Configuration realize(const Expression& a, int n) {
    Configuration c;
    c.n = n;
    std::function<void(const Expression&, Box)> place = [&](const Expression& e, Box frame) {
        if (e.is_gen()) {
            c.labels.push_back(e.label());
            c.boxes.push_back(std::move(frame));
            return;
        }
        if (!e.is_node()) throw std::invalid_argument("realize: unit has no configuration");
        if (e.op() > n)
            throw std::invalid_argument("realize: operation " + std::to_string(e.op()) +
                                        " exceeds the dimension");
        const int axis = e.op() - 1;
        const int parts = static_cast<int>(e.children().size());
        Rational u = frame.iv[axis].first;
        Rational step = frame.length(axis) / parts;
        for (int t = 0; t < parts; ++t) {
            Box sub = frame;
            sub.iv[axis] = {u + step * t, u + step * (t + 1)};
            place(e.children()[t], sub);
        }
    };
    Box unit;
    unit.iv.assign(n, {Rational(0), Rational(1)});
    place(a, unit);
    c.validate();
    return c;
}

namespace detail {

// overlap-connected clumps of `subset` along `axis`, ordered by position
inline std::vector<std::vector<int>> axis_clumps(const Configuration& c,
                                                 const std::vector<int>& subset, int axis) {
    const std::size_t m = subset.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto open_overlap = [&](const Box& a, const Box& b) {
        return a.iv[axis].first < b.iv[axis].second && b.iv[axis].first < a.iv[axis].second;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (open_overlap(c.boxes[subset[i]], c.boxes[subset[j]]))
                parent[find(i)] = find(j);
    std::map<std::size_t, std::vector<int>> groups;
    for (std::size_t i = 0; i < m; ++i) groups[find(i)].push_back(subset[i]);
    std::vector<std::vector<int>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        return c.boxes[a.front()].iv[axis].first < c.boxes[b.front()].iv[axis].first;
    });
    return out;
}

}  // namespace detail

/// Free-axis decomposability: some axis hyperplane separates the
/// configuration into two parts, both recursively decomposable.
inline bool decomposable(const Configuration& c) {
    std::map<std::vector<int>, bool> memo;
    std::function<bool(std::vector<int>)> rec = [&](std::vector<int> subset) -> bool {
        if (subset.size() <= 1) return true;
        auto it = memo.find(subset);
        if (it != memo.end()) return it->second;
        memo[subset] = false;  // guard
        bool ok = false;
        for (int axis = 0; axis < c.n && !ok; ++axis) {
            auto clumps = detail::axis_clumps(c, subset, axis);
            if (clumps.size() < 2) continue;
            // every separating hyperplane splits the clump sequence into a
            // prefix and a suffix
            for (std::size_t cut = 1; cut < clumps.size() && !ok; ++cut) {
                std::vector<int> left, right;
                for (std::size_t t = 0; t < clumps.size(); ++t) {
                    auto& side = t < cut ? left : right;
                    side.insert(side.end(), clumps[t].begin(), clumps[t].end());
                }
                std::sort(left.begin(), left.end());
                std::sort(right.begin(), right.end());
                ok = rec(left) && rec(right);
            }
        }
        memo[subset] = ok;
        return ok;
    };
    std::vector<int> all(c.boxes.size());
    std::iota(all.begin(), all.end(), 0);
    return rec(all);
}

/// Fixed-axis (Milgram) decomposability: strip the configuration along
/// axis 1, each strip along axis 2, and so on; after axis n every
/// compartment must hold exactly one box.
inline bool milgram_decomposable(const Configuration& c) {
    std::function<bool(const std::vector<int>&, int)> rec = [&](const std::vector<int>& subset,
                                                                int axis) -> bool {
        if (subset.size() <= 1) return true;
        if (axis >= c.n) return false;
        for (const auto& clump : detail::axis_clumps(c, subset, axis))
            if (!rec(clump, axis + 1)) return false;
        // a single clump spanning the whole subset still moves to the next
        // axis, which the recursive call above already handled
        return true;
    };
    std::vector<int> all(c.boxes.size());
    std::iota(all.begin(), all.end(), 0);
    return rec(all, 0);
}

/// Shrink boxes toward their barycenters so that every axis length is at
/// most m/(2k), m the minimum pairwise l-infinity distance of barycenters.
/// The output is Milgram decomposable; shrinking never breaks a <_i
/// relation, so G-memberships are preserved.
inline Configuration shrink(const Configuration& c) {
    if (c.k() <= 1) return c;
    std::vector<std::vector<Rational>> bary;
    for (const Box& b : c.boxes) {
        std::vector<Rational> pt;
        for (const auto& [u, v] : b.iv) pt.push_back((u + v) / 2);
        bary.push_back(std::move(pt));
    }
    std::optional<Rational> m;
    for (std::size_t i = 0; i < bary.size(); ++i)
        for (std::size_t j = i + 1; j < bary.size(); ++j) {
            Rational dist = 0;
            for (int ax = 0; ax < c.n; ++ax) {
                Rational d = bary[i][ax] - bary[j][ax];
                if (d < 0) d = -d;
                if (d > dist) dist = d;
            }
            if (!m || dist < *m) m = dist;
        }
    Rational target = *m / (2 * c.k());
    Configuration out = c;
    for (std::size_t i = 0; i < out.boxes.size(); ++i)
        for (int ax = 0; ax < c.n; ++ax) {
            if (out.boxes[i].length(ax) <= target) continue;
            Rational half = target / 2;
            out.boxes[i].iv[ax] = {bary[i][ax] - half, bary[i][ax] + half};
        }
    out.validate();
    return out;
}

/// Is G(A) cap G(B) nonempty?  Both tables impose per-axis "ends before"
/// constraints; the intersection is nonempty iff every axis digraph is
/// acyclic, and a witness is built by longest-path layering with equal
/// slabs.
inline std::optional<Configuration> g_compatible_witness(const Expression& a,
                                                         const Expression& b, int n) {
    std::vector<int> ls = leaves(a);
    if (ls != leaves(b))
        throw std::invalid_argument("g_compatible: expressions have different leaf sets");
    const int k = static_cast<int>(ls.size());
    std::map<int, int> index;
    for (int i = 0; i < k; ++i) index[ls[i]] = i;

    // edges[axis][u] = list of v with "u ends before v starts" required
    std::vector<std::vector<std::vector<int>>> edges(n, std::vector<std::vector<int>>(k));
    for (const Expression* e : {&a, &b}) {
        const PairTable table = pair_table(*e, n);
        for (const auto& [pr, rel] : table.rels()) {
            int u = index[rel.first];
            int v = index[rel.first == pr.first ? pr.second : pr.first];
            edges[rel.op - 1][u].push_back(v);
        }
    }

    Configuration c;
    c.n = n;
    c.labels = ls;
    c.boxes.assign(k, Box{});
    for (int axis = 0; axis < n; ++axis) {
        // longest path layering; cycle detection via DFS color marks
        std::vector<int> layer(k, -1), state(k, 0);
        std::function<bool(int)> depth = [&](int u) -> bool {
            if (state[u] == 1) return false;  // cycle
            if (state[u] == 2) return true;
            state[u] = 1;
            int best = 0;
            for (int v : edges[axis][u]) {
                if (!depth(v)) return false;
                best = std::max(best, layer[v] + 1);
            }
            // layer counts constraints *after* u, so invert later
            layer[u] = best;
            state[u] = 2;
            return true;
        };
        for (int u = 0; u < k; ++u)
            if (!depth(u)) return std::nullopt;
        int levels = *std::max_element(layer.begin(), layer.end()) + 1;
        for (int u = 0; u < k; ++u) {
            int slot = levels - 1 - layer[u];
            c.boxes[u].iv.push_back(
                {Rational(slot, levels), Rational(slot + 1, levels)});
        }
    }
    c.validate();
    return c;
}

inline bool g_compatible(const Expression& a, const Expression& b, int n) {
    return g_compatible_witness(a, b, n).has_value();
}

/// Operad composition: each inner configuration is mapped affinely into
/// the outer box carrying its slot's label; labels renumber blockwise.
inline Configuration cubes_compose(const Configuration& outer,
                                   const std::vector<Configuration>& inners) {
    if (static_cast<int>(inners.size()) != outer.k())
        throw std::invalid_argument("cubes_compose: arity mismatch");
    std::vector<int> order = outer.labels;
    std::sort(order.begin(), order.end());
    for (int j = 0; j < outer.k(); ++j)
        if (order[j] != j + 1)
            throw std::invalid_argument("cubes_compose: outer labels must be 1..k");

    Configuration out;
    out.n = outer.n;
    int offset = 0;
    for (int j = 1; j <= outer.k(); ++j) {
        const Configuration& inner = inners[j - 1];
        if (inner.n != outer.n) throw std::invalid_argument("cubes_compose: dimension mismatch");
        const Box& frame = outer.box_of(j);
        for (int t = 0; t < inner.k(); ++t) {
            Box placed;
            for (int ax = 0; ax < outer.n; ++ax) {
                const auto& [u, v] = frame.iv[ax];
                const auto& [z, w] = inner.boxes[t].iv[ax];
                placed.iv.push_back({u + (v - u) * z, u + (v - u) * w});
            }
            out.labels.push_back(inner.labels[t] + offset);
            out.boxes.push_back(std::move(placed));
        }
        offset += inner.k();
    }
    out.validate();
    return out;
}

/// sigma acting on a configuration: the box labeled j is relabeled
/// sigma(j).
inline Configuration permute_labels(const std::vector<int>& sigma, const Configuration& c) {
    Configuration out = c;
    for (std::size_t i = 0; i < out.labels.size(); ++i) out.labels[i] = sigma[out.labels[i] - 1];
    return out;
}

}  // namespace mol
