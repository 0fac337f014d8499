#pragma once

// Exhaustive generation of M_n(k) and its Milgram subposet, object counting
// against the shape recurrence, degeneracies, operad composition, and poset
// assembly.

#include <mol/coherence.hpp>
#include <mol/expression.hpp>
#include <mol/parallel.hpp>
#include <mol/poset.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace mol {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

namespace detail {

/// All ordered partitions of S (nonempty blocks, every order of blocks).
inline std::vector<std::vector<std::vector<int>>> ordered_partitions(const std::vector<int>& S) {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(std::size_t)> place = [&](std::size_t idx) {
        if (idx == S.size()) {
            out.push_back(cur);
            return;
        }
        int x = S[idx];
        for (std::size_t b = 0; b <= cur.size(); ++b) {
            cur.insert(cur.begin() + b, {x});
            place(idx + 1);
            cur.erase(cur.begin() + b);
        }
        for (auto& blk : cur) {
            blk.push_back(x);
            place(idx + 1);
            blk.pop_back();
        }
    };
    place(0);
    for (auto& part : out)
        for (auto& blk : part) std::sort(blk.begin(), blk.end());
    return out;
}

struct Enumerator {
    int n;
    std::map<std::vector<int>, std::vector<Expression>> memo;

    const std::vector<Expression>& all(const std::vector<int>& S) {
        auto it = memo.find(S);
        if (it != memo.end()) return it->second;
        std::vector<Expression> out;
        generate(S, [&](const Expression& e) { out.push_back(e); });
        std::sort(out.begin(), out.end(), RenderLess{});
        return memo.emplace(S, std::move(out)).first->second;
    }

    /// Stream every object over S without materializing the top level.
    template <typename Fn>
    void generate(const std::vector<int>& S, Fn&& emit) {
        if (S.empty()) {
            emit(Expression::zero());
            return;
        }
        if (S.size() == 1) {
            emit(Expression::gen(S.front()));
            return;
        }
        auto parts = ordered_partitions(S);
        for (int op = 1; op <= n; ++op) {
            for (const auto& part : parts) {
                if (part.size() < 2) continue;
                std::vector<const std::vector<Expression>*> pools;
                pools.reserve(part.size());
                for (const auto& blk : part) pools.push_back(&all(blk));
                std::vector<std::size_t> pick(part.size(), 0);
                std::vector<Expression> children(part.size());
                std::function<void(std::size_t)> product = [&](std::size_t d) {
                    if (d == part.size()) {
                        emit(Expression::box(op, children));
                        return;
                    }
                    for (const Expression& e : *pools[d]) {
                        if (e.is_node() && e.op() == op) continue;
                        children[d] = e;
                        product(d + 1);
                    }
                };
                product(0);
            }
        }
    }
};

}  // namespace detail

/// All objects of M_n(S) (each exactly once, sorted by rendering); with
/// `milgram_only` just the level-ordered ones.
inline std::vector<Expression> enumerate_set(int n, const std::vector<int>& S,
                                             bool milgram_only = false) {
    detail::Enumerator en{n, {}};
    std::vector<int> sorted = S;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Expression> out;
    en.generate(sorted, [&](const Expression& e) {
        if (!milgram_only || is_level_ordered(e)) out.push_back(e);
    });
    std::sort(out.begin(), out.end(), RenderLess{});
    return out;
}

inline std::vector<Expression> enumerate_objects(int n, int k, bool milgram_only = false) {
    std::vector<int> S(k);
    std::iota(S.begin(), S.end(), 1);
    return enumerate_set(n, S, milgram_only);
}

/// |M_n(k)| without storing the objects.
inline std::uint64_t enumerate_count(int n, int k, bool milgram_only = false) {
    std::vector<int> S(k);
    std::iota(S.begin(), S.end(), 1);
    detail::Enumerator en{n, {}};
    std::uint64_t c = 0;
    en.generate(S, [&](const Expression& e) {
        if (!milgram_only || is_level_ordered(e)) ++c;
    });
    return c;
}

struct CountTable {
    int n = 0;
    struct Row {
        int k;
        BigInt shapes;    // a^n_k
        BigInt objects;   // k! * a^n_k
        BigRational ratio;  // a^n_{k+1} / a^n_k
    };
    std::vector<Row> rows;

    void write_csv(std::ostream& os) const {
        os << "k,shapes,objects,ratio\n";
        for (const Row& r : rows)
            os << r.k << "," << r.shapes << "," << r.objects << ","
               << boost::multiprecision::numerator(r.ratio) << "/"
               << boost::multiprecision::denominator(r.ratio) << "\n";
    }
};

/// Shape counts a^n_k by the recurrence
///   a^n_k = n a^n_1 a^n_{k-1} + sum_{i=2}^{k-1} (n-1) a^n_i a^n_{k-i}
/// with a^n_0 = a^n_1 = 1.  Small rows are cross-checked against the
/// enumeration.
inline CountTable shape_counts(int n, int k_max) {
    if (n < 1 || k_max < 0) throw std::invalid_argument("shape_counts: need n >= 1, k_max >= 0");
    std::vector<BigInt> a(k_max + 2);
    a[0] = 1;
    if (k_max + 1 >= 1) a[1] = 1;
    for (int k = 2; k <= k_max + 1; ++k) {
        BigInt v = BigInt(n) * a[1] * a[k - 1];
        for (int i = 2; i <= k - 1; ++i) v += BigInt(n - 1) * a[i] * a[k - i];
        a[k] = v;
    }
    CountTable t;
    t.n = n;
    BigInt fact = 1;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) fact *= k;
        if (n <= 4 && k <= 4 && k >= 1) {
            BigInt observed = enumerate_count(n, k);
            if (observed != fact * a[k])
                throw std::logic_error("shape recurrence disagrees with enumeration at k=" +
                                       std::to_string(k));
        }
        t.rows.push_back({k, a[k], fact * a[k], BigRational(a[k + 1], a[k])});
    }
    return t;
}

/// Unit map s_j: delete generator j, close the gap in the labels.
inline Expression degeneracy(const Expression& e, int j) {
    std::vector<int> ls = leaves(e);
    if (std::find(ls.begin(), ls.end(), j) == ls.end())
        throw std::invalid_argument("degeneracy: label " + std::to_string(j) + " absent");
    std::set<int> keep(ls.begin(), ls.end());
    keep.erase(j);
    Expression r = restrict(e, keep);
    std::map<int, int> shift;
    for (int x : keep) shift[x] = x > j ? x - 1 : x;
    return shift.empty() ? r : relabel(r, shift);
}

/// Operad substitution: label j of `outer` is replaced by inners[j-1]
/// relabeled into the block of labels following the previous inners.
inline Expression operad_compose(const Expression& outer,
                                 const std::vector<Expression>& inners) {
    std::vector<int> ls = leaves(outer);
    if (ls.size() != inners.size())
        throw std::invalid_argument("operad_compose: arity mismatch");
    for (std::size_t j = 0; j < ls.size(); ++j)
        if (ls[j] != static_cast<int>(j) + 1)
            throw std::invalid_argument("operad_compose: outer labels must be 1..k");
    std::vector<int> offset(inners.size() + 1, 0);
    for (std::size_t j = 0; j < inners.size(); ++j)
        offset[j + 1] = offset[j] + static_cast<int>(leaves(inners[j]).size());

    std::function<Expression(const Expression&)> subst = [&](const Expression& x) -> Expression {
        if (x.is_zero()) return x;
        if (x.is_gen()) {
            int j = x.label();
            std::map<int, int> shift;
            for (int l : leaves(inners[j - 1])) shift[l] = l + offset[j - 1];
            if (inners[j - 1].is_zero()) return Expression::zero();
            return relabel(inners[j - 1], shift);
        }
        std::vector<Expression> parts;
        parts.reserve(x.children().size());
        for (const Expression& c : x.children()) parts.push_back(subst(c));
        return Expression::box(x.op(), parts);
    };
    return subst(outer);
}

/// Poset over an explicit object list (assumed distinct, same leaf set).
inline Poset make_expression_poset(const std::vector<Expression>& objs, int n,
                                   unsigned jobs = 1) {
    const int N = static_cast<int>(objs.size());
    std::vector<PairTable> tables;
    tables.reserve(N);
    for (const Expression& e : objs) tables.push_back(pair_table(e, n));
    std::vector<std::vector<char>> mat(N, std::vector<char>(N, 0));
    parallel_for(N, jobs, [&](int i) {
        for (int j = 0; j < N; ++j) mat[i][j] = k_leq(tables[i], tables[j]) ? 1 : 0;
    });
    std::vector<std::string> keys;
    keys.reserve(N);
    for (const Expression& e : objs) keys.push_back(render(e));
    return Poset(std::move(keys), [&](int i, int j) { return mat[i][j] != 0; });
}

/// The poset of M_n(k) (or its Milgram subposet) under morphism existence.
inline Poset build_poset(int n, int k, bool milgram_only = false, unsigned jobs = 1) {
    std::vector<Expression> objs = enumerate_objects(n, k, milgram_only);
    return make_expression_poset(objs, n, jobs);
}

/// Upper covers of A within M_n(k).
inline std::vector<Expression> covers(int n, int k, const Expression& a) {
    expect_object(a, n, k);
    return covers_in(a, enumerate_objects(n, k), n);
}

}  // namespace mol
