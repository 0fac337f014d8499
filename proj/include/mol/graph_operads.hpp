#pragma once

// The complete graph operad K^(n) (acyclic orientations of K_k with edge
// colors in 1..n), the Smith filtration Gamma^(n) of the Barratt-Eccles
// operad (chains of permutations in which every pair of letters flips at
// most n-1 times), and the maps M_n -> K^(n) -> Gamma^(n).

#include <mol/coherence.hpp>
#include <mol/expression.hpp>
#include <mol/pair_table.hpp>

#include <json.hpp>

#include <numeric>
#include <vector>

namespace mol {

/// Every element of K^(n)(k): all k! orientations times n^C(k,2) colorings,
/// ordered by orientation word then coloring.
inline std::vector<PairTable> k_enumerate(int n, int k) {
    std::vector<int> labels(k);
    std::iota(labels.begin(), labels.end(), 1);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) pairs.emplace_back(a, b);

    std::vector<PairTable> out;
    std::vector<int> word = labels;
    do {
        std::vector<int> pos(k + 1);
        for (int p = 0; p < k; ++p) pos[word[p]] = p;
        std::vector<int> colors(pairs.size(), 1);
        while (true) {
            PairTable t(n, labels);
            for (std::size_t e = 0; e < pairs.size(); ++e) {
                auto [a, b] = pairs[e];
                t.set(a, b, colors[e], pos[a] < pos[b] ? a : b);
            }
            out.push_back(std::move(t));
            std::size_t e = 0;
            while (e < colors.size() && colors[e] == n) colors[e++] = 1;
            if (e == colors.size()) break;
            ++colors[e];
        }
    } while (std::next_permutation(word.begin(), word.end()));
    return out;
}

/// Operad substitution in K^(n): vertices split into blocks sized by the
/// inners; cross-block edges copy the outer's edge for the block pair,
/// intra-block edges copy the inner relabeled.
inline PairTable k_compose(const PairTable& outer, const std::vector<PairTable>& inners) {
    const int k = static_cast<int>(outer.labels().size());
    if (static_cast<int>(inners.size()) != k)
        throw std::invalid_argument("k_compose: arity mismatch");
    for (int j = 0; j < k; ++j)
        if (outer.labels()[j] != j + 1)
            throw std::invalid_argument("k_compose: outer labels must be 1..k");

    std::vector<int> offset(k + 1, 0);
    for (int j = 0; j < k; ++j)
        offset[j + 1] = offset[j] + static_cast<int>(inners[j].labels().size());

    std::vector<int> labels(offset[k]);
    std::iota(labels.begin(), labels.end(), 1);
    PairTable t(outer.n(), labels);
    std::vector<int> block(offset[k] + 1, 0);
    for (int j = 0; j < k; ++j)
        for (int x = offset[j] + 1; x <= offset[j + 1]; ++x) block[x] = j;

    for (int a = 1; a <= offset[k]; ++a)
        for (int b = a + 1; b <= offset[k]; ++b) {
            if (block[a] == block[b]) {
                int j = block[a];
                const auto& inner = inners[j];
                const PairRel& r = inner.at(a - offset[j], b - offset[j]);
                t.set(a, b, r.op, r.first + offset[j]);
            } else {
                const PairRel& r = outer.at(block[a] + 1, block[b] + 1);
                t.set(a, b, r.op, r.first == block[a] + 1 ? a : b);
            }
        }
    return t;
}

/// A simplex of the Barratt-Eccles model: a chain of permutations of
/// {1..k}, each written as the word listing the labels in order.
struct GammaSimplex {
    int k = 0;
    std::vector<std::vector<int>> chain;

    int dimension() const { return static_cast<int>(chain.size()) - 1; }

    bool nondegenerate() const {
        for (std::size_t i = 0; i + 1 < chain.size(); ++i)
            if (chain[i] == chain[i + 1]) return false;
        return true;
    }

    nlohmann::json to_json() const { return {{"k", k}, {"chain", chain}}; }

    static GammaSimplex from_json(const nlohmann::json& j) {
        GammaSimplex s;
        s.k = j.at("k").get<int>();
        s.chain = j.at("chain").get<std::vector<std::vector<int>>>();
        s.validate();
        return s;
    }

    void validate() const {
        if (chain.empty()) throw std::invalid_argument("gamma simplex needs a nonempty chain");
        for (const auto& w : chain) {
            std::vector<int> sorted = w;
            std::sort(sorted.begin(), sorted.end());
            for (int i = 0; i < k; ++i)
                if (i >= static_cast<int>(sorted.size()) || sorted[i] != i + 1)
                    throw std::invalid_argument("chain entry is not a permutation of 1..k");
        }
    }

    bool operator==(const GammaSimplex&) const = default;
};

/// Number of relative-order changes of the pair {a,b} along the chain.
inline int pair_flips(const GammaSimplex& s, int a, int b) {
    auto before = [&](const std::vector<int>& w) {
        for (int x : w) {
            if (x == a) return true;
            if (x == b) return false;
        }
        throw std::invalid_argument("labels missing from chain entry");
    };
    int flips = 0;
    bool prev = before(s.chain.front());
    for (std::size_t i = 1; i < s.chain.size(); ++i) {
        bool cur = before(s.chain[i]);
        if (cur != prev) ++flips;
        prev = cur;
    }
    return flips;
}

/// Smith filtration membership: every pair of labels changes relative order
/// at most n-1 times along the chain.
inline bool gamma_member(const GammaSimplex& s, int n) {
    for (int a = 1; a <= s.k; ++a)
        for (int b = a + 1; b <= s.k; ++b)
            if (pair_flips(s, a, b) > n - 1) return false;
    return true;
}

/// All nondegenerate simplices of Gamma^(n)(k), graded by dimension.
/// Finite: each of the C(k,2) pairs flips at most n-1 times and every
/// nondegenerate step flips at least one pair.
inline std::vector<std::vector<GammaSimplex>> gamma_simplices(int n, int k) {
    std::vector<std::vector<int>> words;
    std::vector<int> w(k);
    std::iota(w.begin(), w.end(), 1);
    do words.push_back(w);
    while (std::next_permutation(w.begin(), w.end()));

    std::vector<std::vector<GammaSimplex>> graded;
    graded.push_back({});
    for (const auto& base : words) graded[0].push_back({k, {base}});
    while (true) {
        std::vector<GammaSimplex> next;
        for (const GammaSimplex& s : graded.back())
            for (const auto& word : words) {
                if (word == s.chain.back()) continue;
                GammaSimplex ext{k, s.chain};
                ext.chain.push_back(word);
                if (gamma_member(ext, n)) next.push_back(std::move(ext));
            }
        if (next.empty()) break;
        graded.push_back(std::move(next));
    }
    return graded;
}

/// Underlying permutation word of a table's orientation.
inline std::vector<int> orientation_word(const PairTable& t) {
    auto w = t.order_word();
    if (!w) throw std::invalid_argument("orientation is not a transitive tournament");
    return *w;
}

/// Image of a leq-chain of expressions under the color-forgetting map;
/// the result may be degenerate.
inline GammaSimplex forget_and_map(const std::vector<Expression>& chain, int n) {
    if (chain.empty()) throw std::invalid_argument("forget_and_map: empty chain");
    GammaSimplex s;
    s.k = static_cast<int>(leaves(chain.front()).size());
    for (const Expression& e : chain) s.chain.push_back(orientation_word(pair_table(e, n)));
    return s;
}

/// Image of a leq-chain of tables under the color-forgetting map.
inline GammaSimplex forget_and_map(const std::vector<PairTable>& chain) {
    if (chain.empty()) throw std::invalid_argument("forget_and_map: empty chain");
    GammaSimplex s;
    s.k = static_cast<int>(chain.front().labels().size());
    for (const PairTable& t : chain) s.chain.push_back(orientation_word(t));
    return s;
}

/// Vertexwise block substitution of permutation chains (all chains must
/// have equal length).
inline GammaSimplex gamma_compose(const GammaSimplex& outer,
                                  const std::vector<GammaSimplex>& inners) {
    if (static_cast<int>(inners.size()) != outer.k)
        throw std::invalid_argument("gamma_compose: arity mismatch");
    for (const GammaSimplex& s : inners)
        if (s.chain.size() != outer.chain.size())
            throw std::invalid_argument("gamma_compose: chains must have equal length");
    std::vector<int> offset(outer.k + 1, 0);
    for (int j = 0; j < outer.k; ++j) offset[j + 1] = offset[j] + inners[j].k;

    GammaSimplex out;
    out.k = offset[outer.k];
    for (std::size_t v = 0; v < outer.chain.size(); ++v) {
        std::vector<int> word;
        word.reserve(out.k);
        for (int j : outer.chain[v])
            for (int x : inners[j - 1].chain[v]) word.push_back(x + offset[j - 1]);
        out.chain.push_back(std::move(word));
    }
    return out;
}

}  // namespace mol
