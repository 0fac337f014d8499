#pragma once

// The word problem for M_n(k).  Morphism existence is decided two ways:
// by the pairwise coherence criterion (hom_exists) and independently by
// closure under single interchange rewrites (one_step_rewrites), which also
// yields explicit morphism witnesses.

#include <mol/expression.hpp>
#include <mol/pair_table.hpp>

#include <json.hpp>

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mol {

/// Morphism existence A -> B: for every pair {a,b}, if a #i b in A then in
/// B either a #j b with j >= i or b #j a with j > i.
inline bool hom_exists(const Expression& a, const Expression& b, int n) {
    if (leaves(a) != leaves(b))
        throw std::invalid_argument("hom_exists: expressions have different leaf sets");
    return k_leq(pair_table(a, n), pair_table(b, n));
}

/// One interchange application inside a product context.  `path` routes to
/// the rewritten node; within it, children [l,m) and [m,r) are the two
/// factors, decomposed as X #j Y and Z #j W with j > i.  The split sizes
/// record how many top-level units of each factor went to X resp. Z
/// (0 meaning that piece is the unit).
struct RewriteStep {
    std::vector<int> path;
    int i = 0;
    int j = 0;
    int l = 0, m = 0, r = 0;
    int x = 0, y = 0, z = 0, w = 0;

    nlohmann::json to_json() const {
        return {{"path", path}, {"i", i},
                {"j", j},       {"range", {l, m, r}},
                {"splits", {{"x", x}, {"y", y}, {"z", z}, {"w", w}}}};
    }
};

namespace detail {

struct Piece {
    Expression x, y;
    int xs, ys;
};

// Decompositions of the product of `part` (children of a #i node) as
// X #j Y: the two trivial ones with a unit factor, plus every proper split
// when the piece is a single #j node.
inline std::vector<Piece> factor_decompositions(const std::vector<Expression>& part, int i,
                                                int j) {
    Expression whole = Expression::box(i, part);
    std::vector<Piece> out;
    int units = 1;
    bool splittable = part.size() == 1 && part[0].is_node() && part[0].op() == j;
    if (splittable) units = static_cast<int>(part[0].children().size());
    out.push_back({whole, Expression::zero(), units, 0});
    out.push_back({Expression::zero(), whole, 0, units});
    if (splittable) {
        const auto& ch = part[0].children();
        for (int t = 1; t < static_cast<int>(ch.size()); ++t) {
            out.push_back({Expression::box(j, {ch.begin(), ch.begin() + t}),
                           Expression::box(j, {ch.begin() + t, ch.end()}), t,
                           static_cast<int>(ch.size()) - t});
        }
    }
    return out;
}

template <typename Fn>
void for_each_rewrite_at(const Expression& node, int n, const std::vector<int>& path, Fn&& emit) {
    if (!node.is_node()) return;
    const int i = node.op();
    const auto& ch = node.children();
    const int s = static_cast<int>(ch.size());
    for (int l = 0; l < s; ++l)
        for (int m = l + 1; m < s; ++m)
            for (int r = m + 1; r <= s; ++r)
                for (int j = i + 1; j <= n; ++j) {
                    auto left = factor_decompositions({ch.begin() + l, ch.begin() + m}, i, j);
                    auto right = factor_decompositions({ch.begin() + m, ch.begin() + r}, i, j);
                    for (const Piece& p : left)
                        for (const Piece& q : right) {
                            if (p.x.is_zero() && q.x.is_zero()) continue;
                            if (p.y.is_zero() && q.y.is_zero()) continue;
                            Expression target =
                                Expression::box(j, {Expression::box(i, {p.x, q.x}),
                                                    Expression::box(i, {p.y, q.y})});
                            std::vector<Expression> rebuilt(ch.begin(), ch.begin() + l);
                            rebuilt.push_back(target);
                            rebuilt.insert(rebuilt.end(), ch.begin() + r, ch.end());
                            RewriteStep step;
                            step.path = path;
                            step.i = i;
                            step.j = j;
                            step.l = l;
                            step.m = m;
                            step.r = r;
                            step.x = p.xs;
                            step.y = p.ys;
                            step.z = q.xs;
                            step.w = q.ys;
                            emit(step, Expression::box(i, rebuilt));
                        }
                }
}

inline Expression rebuild_along(const Expression& root, const std::vector<int>& path,
                                std::size_t depth, const Expression& replacement) {
    if (depth == path.size()) return replacement;
    const auto& ch = root.children();
    std::vector<Expression> parts(ch.begin(), ch.end());
    parts[path[depth]] = rebuild_along(ch[path[depth]], path, depth + 1, replacement);
    return Expression::box(root.op(), parts);
}

}  // namespace detail

/// All single-interchange rewrites of A, merged by target and ordered by
/// target rendering.  Every returned target B satisfies hom_exists(A,B).
inline std::vector<std::pair<RewriteStep, Expression>> one_step_rewrites(const Expression& a,
                                                                         int n) {
    std::map<std::string, std::pair<RewriteStep, Expression>> out;
    const std::string self = render(a);

    struct Walker {
        const Expression& root;
        int n;
        std::map<std::string, std::pair<RewriteStep, Expression>>& out;
        const std::string& self;

        void visit(const Expression& node, std::vector<int>& path) {
            detail::for_each_rewrite_at(node, n, path,
                                        [&](const RewriteStep& step, const Expression& local) {
                                            Expression whole =
                                                detail::rebuild_along(root, step.path, 0, local);
                                            std::string key = render(whole);
                                            if (key == self) return;
                                            out.emplace(std::move(key),
                                                        std::make_pair(step, std::move(whole)));
                                        });
            if (!node.is_node()) return;
            for (int c = 0; c < static_cast<int>(node.children().size()); ++c) {
                path.push_back(c);
                visit(node.children()[c], path);
                path.pop_back();
            }
        }
    } w{a, n, out, self};

    std::vector<int> path;
    w.visit(a, path);

    std::vector<std::pair<RewriteStep, Expression>> res;
    res.reserve(out.size());
    for (auto& [k, v] : out) res.push_back(std::move(v));
    return res;
}

/// Rendered forms of everything reachable from A by interchange rewrites
/// (including A).  Finite since M_n(k) is.
inline std::set<std::string> rewrite_closure(const Expression& a, int n) {
    std::set<std::string> seen{render(a)};
    std::deque<Expression> frontier{a};
    while (!frontier.empty()) {
        Expression cur = std::move(frontier.front());
        frontier.pop_front();
        for (auto& [step, tgt] : one_step_rewrites(cur, n))
            if (seen.insert(render(tgt)).second) frontier.push_back(tgt);
    }
    return seen;
}

struct Witness {
    std::vector<RewriteStep> steps;
    std::vector<Expression> intermediates;  // source first, target last

    nlohmann::json to_json() const {
        nlohmann::json js = nlohmann::json::array();
        for (const auto& s : steps) js.push_back(s.to_json());
        nlohmann::json exprs = nlohmann::json::array();
        for (const auto& e : intermediates) exprs.push_back(render(e));
        return {{"steps", js}, {"expressions", exprs}};
    }
};

/// Shortest chain of one-step rewrites A -> ... -> B, breadth first with
/// ties broken by target rendering; empty optional if B is unreachable
/// within `max_depth` (0 = unbounded).
inline std::optional<Witness> reachability_witness(const Expression& a, const Expression& b,
                                                   int n, int max_depth = 0) {
    if (leaves(a) != leaves(b))
        throw std::invalid_argument("reachability_witness: expressions have different leaf sets");
    const std::string goal = render(b);
    struct Entry {
        Expression expr;
        int parent;  // index into entries, -1 for the source
        RewriteStep step;
    };
    std::vector<Entry> entries{{a, -1, RewriteStep{}}};
    std::map<std::string, int> seen{{render(a), 0}};
    std::deque<std::pair<int, int>> frontier{{0, 0}};  // entry index, depth
    while (!frontier.empty()) {
        auto [idx, depth] = frontier.front();
        frontier.pop_front();
        if (render(entries[idx].expr) == goal) {
            Witness w;
            std::vector<int> chain;
            for (int c = idx; c != -1; c = entries[c].parent) chain.push_back(c);
            std::reverse(chain.begin(), chain.end());
            for (std::size_t p = 0; p < chain.size(); ++p) {
                w.intermediates.push_back(entries[chain[p]].expr);
                if (p > 0) w.steps.push_back(entries[chain[p]].step);
            }
            return w;
        }
        if (max_depth > 0 && depth >= max_depth) continue;
        Expression cur = entries[idx].expr;
        for (auto& [step, tgt] : one_step_rewrites(cur, n)) {
            std::string key = render(tgt);
            if (seen.count(key)) continue;
            seen.emplace(std::move(key), static_cast<int>(entries.size()));
            entries.push_back({tgt, idx, step});
            frontier.emplace_back(static_cast<int>(entries.size()) - 1, depth + 1);
        }
    }
    return std::nullopt;
}

/// Upper covers of A among `objects`: B > A with nothing strictly between.
inline std::vector<Expression> covers_in(const Expression& a,
                                         const std::vector<Expression>& objects, int n) {
    PairTable ta = pair_table(a, n);
    std::vector<std::pair<Expression, PairTable>> ups;
    for (const Expression& b : objects) {
        PairTable tb = pair_table(b, n);
        if (!(ta == tb) && k_leq(ta, tb)) ups.emplace_back(b, std::move(tb));
    }
    std::vector<Expression> out;
    for (std::size_t p = 0; p < ups.size(); ++p) {
        bool cover = true;
        for (std::size_t q = 0; q < ups.size(); ++q) {
            if (p == q) continue;
            if (k_leq(ups[q].second, ups[p].second) && !(ups[q].second == ups[p].second)) {
                cover = false;
                break;
            }
        }
        if (cover) out.push_back(ups[p].first);
    }
    std::sort(out.begin(), out.end(), RenderLess{});
    return out;
}

}  // namespace mol
