#pragma once

// Per-pair relation record of an expression: for every unordered label pair
// {a,b} the operation color at their least common enclosing node and which
// of the two comes first.  A PairTable is simultaneously the coherence
// fingerprint of an expression and an element of the complete graph operad
// K^(n)(k): an edge coloring in 1..n together with an acyclic (transitive)
// orientation of the complete graph.

#include <mol/expression.hpp>

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mol {

struct PairRel {
    int op = 0;
    int first = 0;
    bool operator==(const PairRel&) const = default;
};

class PairTable {
public:
    PairTable() = default;
    PairTable(int n, std::vector<int> labels) : n_(n), labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
    }

    int n() const { return n_; }
    const std::vector<int>& labels() const { return labels_; }

    void set(int a, int b, int op, int first) {
        if (a == b) throw std::invalid_argument("pair needs distinct labels");
        if (first != a && first != b) throw std::invalid_argument("first must be one of the pair");
        if (op < 1 || op > n_) throw std::invalid_argument("color out of range");
        rel_[key(a, b)] = PairRel{op, first};
    }

    const PairRel& at(int a, int b) const {
        auto it = rel_.find(key(a, b));
        if (it == rel_.end())
            throw std::invalid_argument("no relation for pair {" + std::to_string(a) + "," +
                                        std::to_string(b) + "}");
        return it->second;
    }

    const std::map<std::pair<int, int>, PairRel>& rels() const { return rel_; }

    bool operator==(const PairTable& o) const {
        return n_ == o.n_ && labels_ == o.labels_ && rel_ == o.rel_;
    }

    bool complete() const {
        return rel_.size() == labels_.size() * (labels_.size() - 1) / 2;
    }

    /// The total order of labels induced by the orientation, first label
    /// first.  Empty optional if the tournament is not transitive.
    std::optional<std::vector<int>> order_word() const {
        if (!complete()) return std::nullopt;
        std::map<int, int> wins;
        for (int a : labels_) wins[a] = 0;
        for (const auto& [k, r] : rel_) ++wins[r.first];
        std::vector<int> word = labels_;
        std::sort(word.begin(), word.end(),
                  [&](int a, int b) { return wins[a] > wins[b] || (wins[a] == wins[b] && a < b); });
        for (std::size_t i = 0; i < word.size(); ++i)
            for (std::size_t j = i + 1; j < word.size(); ++j)
                if (at(word[i], word[j]).first != word[i]) return std::nullopt;
        return word;
    }

    bool valid() const { return order_word().has_value(); }

    /// Sub-table on a label subset.
    PairTable restricted(const std::vector<int>& subset) const {
        PairTable t(n_, subset);
        for (std::size_t i = 0; i < subset.size(); ++i)
            for (std::size_t j = i + 1; j < subset.size(); ++j) {
                const PairRel& r = at(subset[i], subset[j]);
                t.set(subset[i], subset[j], r.op, r.first);
            }
        return t;
    }

    nlohmann::json to_json() const {
        nlohmann::json rels = nlohmann::json::array();
        for (const auto& [k, r] : rel_)
            rels.push_back({{"a", k.first}, {"b", k.second}, {"op", r.op}, {"first", r.first}});
        return {{"n", n_}, {"labels", labels_}, {"rels", rels}};
    }

    static PairTable from_json(const nlohmann::json& j) {
        PairTable t(j.at("n").get<int>(), j.at("labels").get<std::vector<int>>());
        for (const auto& r : j.at("rels"))
            t.set(r.at("a").get<int>(), r.at("b").get<int>(), r.at("op").get<int>(),
                  r.at("first").get<int>());
        if (!t.complete()) throw std::invalid_argument("pair table is incomplete");
        return t;
    }

private:
    static std::pair<int, int> key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

    int n_ = 0;
    std::vector<int> labels_;
    std::map<std::pair<int, int>, PairRel> rel_;
};

/// Fingerprint of an expression with pairwise-distinct generators:
/// rel{a,b} = (op at the least common enclosing node, whichever of a,b
/// occurs in an earlier child).
inline PairTable pair_table(const Expression& e, int n) {
    PairTable t(n, leaves(e));
    struct Walker {
        PairTable& t;
        void walk(const Expression& x) {
            if (!x.is_node()) return;
            std::vector<std::vector<int>> lv;
            lv.reserve(x.children().size());
            for (const Expression& c : x.children()) lv.push_back(leaf_sequence(c));
            for (std::size_t p = 0; p < lv.size(); ++p)
                for (std::size_t q = p + 1; q < lv.size(); ++q)
                    for (int a : lv[p])
                        for (int b : lv[q]) t.set(a, b, x.op(), a);
            for (const Expression& c : x.children()) walk(c);
        }
    } w{t};
    w.walk(e);
    return t;
}

namespace detail {

// Finest ordered partition of `labels` realizing color `i` at the top:
// blocks are strongly connected components of the digraph whose vertices
// are the components of the "not color i" relation and whose edges follow
// the color-i orientations; cross-block pairs then carry color i oriented
// consistently with block order.  Empty optional if no split with >= 2
// blocks exists.
inline std::optional<std::vector<std::vector<int>>> top_split(const PairTable& t,
                                                              const std::vector<int>& labels,
                                                              int i) {
    const std::size_t m = labels.size();
    std::map<int, std::size_t> idx;
    for (std::size_t p = 0; p < m; ++p) idx[labels[p]] = p;

    // union-find over pairs that must share a block (color != i)
    std::vector<std::size_t> parent(m);
    for (std::size_t p = 0; p < m; ++p) parent[p] = p;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q)
            if (t.at(labels[p], labels[q]).op != i) parent[find(p)] = find(q);

    std::map<std::size_t, std::size_t> comp_id;
    for (std::size_t p = 0; p < m; ++p) comp_id.emplace(find(p), comp_id.size());
    const std::size_t nc = comp_id.size();
    if (nc < 2) return std::nullopt;

    // digraph on components, then strongly connected components
    std::vector<std::vector<bool>> reach(nc, std::vector<bool>(nc, false));
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = p + 1; q < m; ++q) {
            std::size_t cp = comp_id[find(p)], cq = comp_id[find(q)];
            if (cp == cq) continue;
            const PairRel& r = t.at(labels[p], labels[q]);
            if (r.first == labels[p])
                reach[cp][cq] = true;
            else
                reach[cq][cp] = true;
        }
    for (std::size_t w = 0; w < nc; ++w)
        for (std::size_t u = 0; u < nc; ++u)
            if (reach[u][w])
                for (std::size_t v = 0; v < nc; ++v)
                    if (reach[w][v]) reach[u][v] = true;

    std::vector<int> scc(nc, -1);
    int nscc = 0;
    for (std::size_t u = 0; u < nc; ++u) {
        if (scc[u] >= 0) continue;
        scc[u] = nscc;
        for (std::size_t v = u + 1; v < nc; ++v)
            if (scc[v] < 0 && reach[u][v] && reach[v][u]) scc[v] = nscc;
        ++nscc;
    }
    if (nscc < 2) return std::nullopt;

    // order the sccs: the condensation of a tournament is a transitive
    // tournament, so scc out-degrees are pairwise distinct and rank them
    std::vector<std::vector<bool>> scc_reach(nscc, std::vector<bool>(nscc, false));
    for (std::size_t u = 0; u < nc; ++u)
        for (std::size_t v = 0; v < nc; ++v)
            if (scc[u] != scc[v] && reach[u][v]) scc_reach[scc[u]][scc[v]] = true;
    std::vector<int> out(nscc, 0);
    for (int s = 0; s < nscc; ++s)
        for (int q = 0; q < nscc; ++q)
            if (scc_reach[s][q]) ++out[s];
    std::vector<int> order(nscc);
    for (int s = 0; s < nscc; ++s) order[s] = s;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return out[a] > out[b]; });

    std::vector<std::vector<int>> blocks(nscc);
    for (std::size_t p = 0; p < m; ++p) {
        int s = scc[comp_id[find(p)]];
        int pos = static_cast<int>(std::find(order.begin(), order.end(), s) - order.begin());
        blocks[pos].push_back(labels[p]);
    }
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    return blocks;
}

inline std::optional<Expression> from_pair_table_rec(const PairTable& t,
                                                     const std::vector<int>& labels) {
    if (labels.empty()) return Expression::zero();
    if (labels.size() == 1) return Expression::gen(labels.front());
    int found_op = 0;
    std::vector<std::vector<int>> found;
    for (int i = 1; i <= t.n(); ++i) {
        auto split = top_split(t, labels, i);
        if (!split) continue;
        if (found_op != 0)
            throw std::logic_error("two distinct top operations admit a split");
        found_op = i;
        found = std::move(*split);
    }
    if (found_op == 0) return std::nullopt;
    std::vector<Expression> parts;
    parts.reserve(found.size());
    for (const auto& blk : found) {
        auto sub = from_pair_table_rec(t, blk);
        if (!sub) return std::nullopt;
        parts.push_back(std::move(*sub));
    }
    return Expression::box(found_op, parts);
}

}  // namespace detail

/// Invert pair_table: the unique expression with fingerprint t, or empty if
/// t is not realizable.  At each level the top operation is the unique one
/// admitting an ordered split; recursion uses the finest such partition.
inline std::optional<Expression> from_pair_table(const PairTable& t) {
    if (!t.complete()) throw std::invalid_argument("pair table is incomplete");
    if (!t.valid()) throw std::invalid_argument("orientation is not a transitive tournament");
    return detail::from_pair_table_rec(t, t.labels());
}

/// The partial order of the complete graph operad K^(n)(k): x <= y iff every
/// edge a -(i)-> b of x appears in y as a -(j)-> b with j >= i or as
/// b -(j)-> a with j > i.  On realizable tables this is exactly morphism
/// existence in M_n(k).
inline bool k_leq(const PairTable& x, const PairTable& y) {
    if (x.labels() != y.labels())
        throw std::invalid_argument("pair tables over different label sets");
    if (x.n() != y.n()) throw std::invalid_argument("pair tables with different n");
    for (const auto& [k, rx] : x.rels()) {
        const PairRel& ry = y.at(k.first, k.second);
        if (ry.first == rx.first) {
            if (ry.op < rx.op) return false;
        } else {
            if (ry.op <= rx.op) return false;
        }
    }
    return true;
}

}  // namespace mol
