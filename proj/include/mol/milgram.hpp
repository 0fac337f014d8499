#pragma once

// The permutohedron P_k as the downset of the ascending word inside the
// Milgram subcategory, its ordered-set-partition face lattice, the
// symmetric group action, the pi_A retractions, and the combinatorial
// q-map (P_k)^{n-1} -> level-ordered objects.

#include <mol/coherence.hpp>
#include <mol/enumeration.hpp>
#include <mol/expression.hpp>
#include <mol/poset.hpp>

#include <json.hpp>

#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace mol {

/// Objects mapping into X (including X).  With `milgram_only` the downset
/// is taken inside the Milgram subcategory, which is where the
/// permutohedron lives; without it, inside all of M_n(k).
inline std::vector<Expression> downset(int n, const Expression& x, bool milgram_only = true) {
    std::vector<int> S = leaves(x);
    PairTable tx = pair_table(x, n);
    std::vector<Expression> out;
    for (const Expression& y : enumerate_set(n, S, milgram_only))
        if (k_leq(pair_table(y, n), tx)) out.push_back(y);
    return out;
}

inline Poset downset_poset(int n, const Expression& x, bool milgram_only = true,
                           unsigned jobs = 1) {
    return make_expression_poset(downset(n, x, milgram_only), n, jobs);
}

/// The ascending word 1 #op 2 #op ... #op k.
inline Expression ascending_word(int op, int k) {
    std::vector<Expression> gens;
    gens.reserve(k);
    for (int i = 1; i <= k; ++i) gens.push_back(Expression::gen(i));
    return Expression::box(op, gens);
}

/// Elements of P_k = S(1 #2 2 #2 ... #2 k): products A_1 #1 ... #1 A_s of
/// ascending #2-words.
inline std::vector<Expression> permutohedron_elements(int k) {
    return downset(2, ascending_word(2, k), true);
}

/// Top-level #1 factors of an element of P_k.
inline std::vector<Expression> top_blocks(const Expression& a) {
    if (a.is_node() && a.op() == 1)
        return {a.children().begin(), a.children().end()};
    return {a};
}

struct OrderedPartition {
    std::vector<std::vector<int>> blocks;  // disjoint, covering, each sorted

    bool operator==(const OrderedPartition&) const = default;

    nlohmann::json to_json() const { return {{"blocks", blocks}}; }

    static OrderedPartition from_json(const nlohmann::json& j) {
        return {j.at("blocks").get<std::vector<std::vector<int>>>()};
    }
};

/// Face order on ordered partitions: p <= q iff the blocks of q are unions
/// of consecutive runs of blocks of p.
inline bool partition_leq(const OrderedPartition& p, const OrderedPartition& q) {
    std::size_t at = 0;
    for (const auto& qb : q.blocks) {
        std::set<int> want(qb.begin(), qb.end());
        std::set<int> got;
        while (got != want) {
            if (at >= p.blocks.size()) return false;
            for (int x : p.blocks[at]) {
                if (!want.count(x)) return false;
                got.insert(x);
            }
            ++at;
        }
    }
    return at == p.blocks.size();
}

inline OrderedPartition to_partition(const Expression& a) {
    OrderedPartition p;
    for (const Expression& b : top_blocks(a)) p.blocks.push_back(leaves(b));
    return p;
}

inline Expression from_partition(const OrderedPartition& p) {
    std::vector<Expression> parts;
    parts.reserve(p.blocks.size());
    for (const auto& blk : p.blocks) {
        std::vector<Expression> gens;
        gens.reserve(blk.size());
        std::vector<int> sorted = blk;
        std::sort(sorted.begin(), sorted.end());
        for (int x : sorted) gens.push_back(Expression::gen(x));
        parts.push_back(Expression::box(2, gens));
    }
    return Expression::box(1, parts);
}

/// The bijection P_k <-> ordered set partitions, with the order checked to
/// agree on both sides.
struct PartitionIso {
    std::vector<Expression> elements;
    std::vector<OrderedPartition> partitions;

    bool is_order_isomorphism() const {
        const std::size_t N = elements.size();
        std::vector<PairTable> tables;
        tables.reserve(N);
        for (const Expression& e : elements) tables.push_back(pair_table(e, 2));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                bool expr_le = k_leq(tables[i], tables[j]);
                bool part_le = partition_leq(partitions[i], partitions[j]);
                if (expr_le != part_le) return false;
            }
        return true;
    }
};

/// Bijection plus order agreement, verified on construction.
inline PartitionIso partition_iso(int k) {
    PartitionIso iso;
    iso.elements = permutohedron_elements(k);
    for (const Expression& e : iso.elements) {
        OrderedPartition p = to_partition(e);
        if (from_partition(p) != e)
            throw std::logic_error("partition bijection failed on " + render(e));
        iso.partitions.push_back(std::move(p));
    }
    if (!iso.is_order_isomorphism())
        throw std::logic_error("partition correspondence is not an order isomorphism");
    return iso;
}

/// True iff e is a #1-product of ascending #2-words over labels 1..k.
inline bool is_permutohedron_element(const Expression& e, int k) {
    std::vector<int> ls;
    collect_leaves(e, ls);
    std::sort(ls.begin(), ls.end());
    for (int i = 0; i < k; ++i)
        if (i >= static_cast<int>(ls.size()) || ls[i] != i + 1) return false;
    if (static_cast<int>(ls.size()) != k) return false;
    for (const Expression& blk : top_blocks(e)) {
        if (blk.is_gen()) continue;
        if (!blk.is_node() || blk.op() != 2) return false;
        int prev = 0;
        for (const Expression& g : blk.children()) {
            if (!g.is_gen() || g.label() <= prev) return false;
            prev = g.label();
        }
    }
    return true;
}

/// sigma acting on P_k: relabel, then re-sort every inner #2-block
/// ascending.
inline Expression perm_action(const std::vector<int>& sigma, const Expression& a) {
    std::map<int, int> m;
    for (std::size_t i = 0; i < sigma.size(); ++i) m[static_cast<int>(i) + 1] = sigma[i];
    return from_partition(to_partition(relabel(a, m)));
}

/// pi_A(B) = (B cap |A_1|) #1 ... #1 (B cap |A_p|) over the #1-irreducible
/// factors of A; retracts P_k onto the face S(A).
inline Expression pi_retract(const Expression& a, const Expression& b) {
    std::vector<Expression> parts;
    for (const Expression& blk : top_blocks(a)) {
        std::vector<int> ls = leaves(blk);
        parts.push_back(restrict(b, std::set<int>(ls.begin(), ls.end())));
    }
    return Expression::box(1, parts);
}

/// q(A_1,...,A_{n-1}): retract to the nested chain B_i = pi_{A_1} ...
/// pi_{A_{i-1}}(A_i), then read the n-1 inherited parenthesis levels off
/// B_{n-1}, turning level-l splits into #l and the innermost #2-words into
/// #n.  Levels that do not split are skipped, so the output is canonical
/// and level ordered.
inline Expression q_map(int n, const std::vector<Expression>& cells) {
    if (static_cast<int>(cells.size()) != n - 1)
        throw std::invalid_argument("q_map: expected n-1 cells");
    std::vector<Expression> b{cells.front()};
    for (std::size_t i = 1; i < cells.size(); ++i) {
        Expression x = cells[i];
        for (std::size_t j = i; j-- > 0;) x = pi_retract(cells[j], x);
        b.push_back(std::move(x));
    }

    std::function<Expression(const std::vector<int>&, int)> build =
        [&](const std::vector<int>& labels, int level) -> Expression {
        if (level <= n - 1) {
            std::set<int> inside(labels.begin(), labels.end());
            std::vector<std::vector<int>> split;
            for (const Expression& blk : top_blocks(b[level - 1])) {
                std::vector<int> sub;
                for (int x : leaves(blk))
                    if (inside.count(x)) sub.push_back(x);
                if (!sub.empty()) split.push_back(std::move(sub));
            }
            if (split.size() >= 2) {
                std::vector<Expression> parts;
                parts.reserve(split.size());
                for (const auto& sub : split) parts.push_back(build(sub, level + 1));
                return Expression::box(level, parts);
            }
            return build(labels, level + 1);
        }
        // innermost: the #2-word of B_{n-1} on these labels becomes a #n-word
        Expression word = restrict(b.back(), std::set<int>(labels.begin(), labels.end()));
        if (word.is_gen()) return word;
        return Expression::box(n, {word.children().begin(), word.children().end()});
    };
    return build(leaves(cells.front()), 1);
}

}  // namespace mol
