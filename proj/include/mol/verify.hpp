#pragma once

// Named recipes reproducing the published worked examples and figures:
// each recipe recomputes one example from scratch and throws with a
// description on any mismatch.  The CLI's verify-paper subcommand runs all
// of them.

#include <mol/chain_complex.hpp>
#include <mol/coherence.hpp>
#include <mol/cubes.hpp>
#include <mol/enumeration.hpp>
#include <mol/graph_operads.hpp>
#include <mol/milgram.hpp>

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace mol {

struct Recipe {
    std::string name;
    std::function<void()> run;
};

namespace verify_detail {

inline void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

template <typename A, typename B>
void expect_eq(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
        std::ostringstream os;
        os << what << ": got " << got << ", expected " << want;
        throw std::runtime_error(os.str());
    }
}

inline Rational q(long long a, long long b) { return Rational(a, b); }

inline Configuration make_config(int n, std::vector<std::pair<int, Box>> items) {
    Configuration c;
    c.n = n;
    for (auto& [label, b] : items) {
        c.labels.push_back(label);
        c.boxes.push_back(std::move(b));
    }
    c.validate();
    return c;
}

inline Configuration left_figure() {
    return make_config(2, {{1, Box{{{0, q(1, 2)}, {0, q(1, 2)}}}},
                           {2, Box{{{0, q(1, 2)}, {q(1, 2), 1}}}},
                           {3, Box{{{q(1, 2), 1}, {0, q(1, 4)}}}},
                           {4, Box{{{q(1, 2), 1}, {q(1, 4), 1}}}}});
}

inline Configuration three_cube_knot() {
    return make_config(3, {{1, Box{{{0, q(1, 2)}, {0, 1}, {0, q(1, 2)}}}},
                           {2, Box{{{0, 1}, {0, q(1, 2)}, {q(1, 2), 1}}}},
                           {3, Box{{{q(1, 2), 1}, {q(1, 2), 1}, {0, 1}}}}});
}

inline Configuration pinwheel() {
    return make_config(2, {{1, Box{{{0, q(3, 4)}, {0, q(1, 4)}}}},
                           {2, Box{{{q(3, 4), 1}, {0, q(3, 4)}}}},
                           {3, Box{{{0, q(1, 4)}, {q(1, 4), 1}}}},
                           {4, Box{{{q(1, 4), 1}, {q(3, 4), 1}}}}});
}

inline Configuration milgram_right_figure() {
    return make_config(2, {{2, Box{{{0, 1}, {0, q(1, 2)}}}},
                           {1, Box{{{0, q(1, 2)}, {q(1, 2), 1}}}},
                           {3, Box{{{q(1, 2), 1}, {q(1, 2), 1}}}}});
}

inline Configuration random_config(std::mt19937_64& rng, int n, int k, long long denom = 12) {
    while (true) {
        Configuration c;
        c.n = n;
        bool ok = true;
        for (int label = 1; label <= k && ok; ++label) {
            Box b;
            for (int retry = 0;; ++retry) {
                if (retry > 200) {
                    ok = false;
                    break;
                }
                b.iv.clear();
                for (int ax = 0; ax < n; ++ax) {
                    long long u = static_cast<long long>(rng() % denom);
                    long long len = 1 + static_cast<long long>(rng() % (denom - u));
                    b.iv.push_back({q(u, denom), q(u + len, denom)});
                }
                bool disjoint = true;
                for (const Box& other : c.boxes)
                    if (!b.interior_disjoint(other)) disjoint = false;
                if (disjoint) break;
            }
            if (!ok) break;
            c.labels.push_back(label);
            c.boxes.push_back(b);
        }
        if (ok) return c;
    }
}

}  // namespace verify_detail

inline std::vector<Recipe> paper_recipes(std::uint64_t seed = 12345, int samples = 500) {
    using namespace verify_detail;
    std::vector<Recipe> rs;

    rs.push_back({"expression-canonical-form", [] {
        expect_eq(render(parse("(2 #2 3) #1 1", 2)), std::string("(2 #2 3) #1 1"), "render");
        expect_eq(render(parse("0 #1 5", 3)), std::string("5"), "unit absorption");
        expect_eq(render(parse("1 #1 2 #1 3", 2)), std::string("1 #1 2 #1 3"), "flattening");
    }});

    rs.push_back({"restriction-bullets", [] {
        Expression a = parse("(2 #2 3) #1 1", 2);
        expect_eq(render(restrict(a, {1, 2})), std::string("2 #1 1"), "restrict {1,2}");
        expect_eq(render(restrict(a, {2, 3})), std::string("2 #2 3"), "restrict {2,3}");
    }});

    rs.push_back({"fingerprint-bullets", [] {
        PairTable t = pair_table(parse("(2 #2 3) #1 1", 2), 2);
        expect(t.at(2, 3) == PairRel{2, 2}, "pair {2,3}");
        expect(t.at(1, 2) == PairRel{1, 2}, "pair {1,2}");
        expect(t.at(1, 3) == PairRel{1, 3}, "pair {1,3}");
    }});

    rs.push_back({"morphism-example", [] {
        expect(hom_exists(parse("(2 #2 3) #1 1", 2), parse("2 #2 1 #2 3", 2), 2),
               "expected a morphism");
    }});

    rs.push_back({"non-morphism-example", [] {
        expect(!hom_exists(parse("(2 #2 3) #1 1", 2), parse("1 #2 3 #2 2", 2), 2),
               "expected no morphism");
    }});

    rs.push_back({"octahedron-rewrites", [] {
        std::set<std::string> got;
        for (auto& [s, t] : one_step_rewrites(parse("2 #1 1", 3), 3)) got.insert(render(t));
        expect(got == std::set<std::string>{"2 #2 1", "1 #2 2", "2 #3 1", "1 #3 2"},
               "rewrite targets of 2 #1 1");
    }});

    rs.push_back({"octahedron-edge-set", [] {
        // the twelve arrows of the M_3(2) figure
        std::set<std::pair<std::string, std::string>> figure{
            {"2 #1 1", "2 #2 1"}, {"2 #1 1", "1 #2 2"}, {"2 #1 1", "1 #3 2"},
            {"2 #1 1", "2 #3 1"}, {"1 #1 2", "2 #2 1"}, {"1 #1 2", "1 #2 2"},
            {"1 #1 2", "1 #3 2"}, {"1 #1 2", "2 #3 1"}, {"2 #2 1", "1 #3 2"},
            {"2 #2 1", "2 #3 1"}, {"1 #2 2", "1 #3 2"}, {"1 #2 2", "2 #3 1"}};
        std::set<std::pair<std::string, std::string>> got;
        auto objs = enumerate_objects(3, 2);
        for (const Expression& a : objs)
            for (const Expression& b : objs)
                if (!(a == b) && hom_exists(a, b, 3)) got.emplace(render(a), render(b));
        expect(got == figure, "morphism arrows of M_3(2)");
    }});

    rs.push_back({"octahedron-object-counts", [] {
        for (int n = 2; n <= 4; ++n)
            expect_eq(enumerate_count(n, 2), static_cast<std::uint64_t>(2 * n),
                      "|M_n(2)| with n=" + std::to_string(n));
    }});

    rs.push_back({"interchange-example", [] {
        bool found = false;
        for (auto& [s, t] : one_step_rewrites(parse("(1 #2 2) #1 (3 #2 4)", 2), 2))
            if (render(t) == "(1 #1 3) #2 (2 #1 4)") found = true;
        expect(found, "interchange target missing");
    }});

    rs.push_back({"octahedron-witness-edge", [] {
        auto w = reachability_witness(parse("2 #1 1", 2), parse("1 #2 2", 2), 2);
        expect(w.has_value() && w->steps.size() == 1, "single-step witness");
        const RewriteStep& s = w->steps[0];
        expect(s.i == 1 && s.j == 2 && s.x == 0 && s.y == 1 && s.z == 1 && s.w == 0,
               "witness step identity");
    }});

    rs.push_back({"shape-closed-forms", [] {
        for (int n = 2; n <= 4; ++n) {
            CountTable t = shape_counts(n, 4);
            expect(t.rows[2].shapes == n, "a_2");
            expect(t.rows[3].shapes == 2 * n * n - n, "a_3");
            expect(t.rows[4].shapes == 5 * n * n * n - 5 * n * n + n, "a_4");
        }
        expect(shape_counts(2, 5).rows[5].shapes == 90, "a^2_5 from the recurrence");
    }});

    rs.push_back({"ratio-limit-approach", [] {
        CountTable t = shape_counts(2, 13);
        BigRational prev = 0;
        for (int k = 2; k <= 12; ++k) {
            expect(t.rows[k].ratio > prev, "ratios increase");
            prev = t.rows[k].ratio;
        }
        BigRational r = t.rows[12].ratio;
        expect(r * r - 6 * r + 1 < 0, "ratio stays below 3+2*sqrt(2)");
    }});

    rs.push_back({"milgram-shape", [] {
        expect(is_level_ordered(parse("(1 #2 2) #1 3", 2)), "level ordered");
        expect(!is_level_ordered(parse("(1 #1 2) #2 3", 2)), "not level ordered");
        expect_eq(enumerate_objects(2, 3, true).size(), std::size_t{24}, "Milgram count");
    }});

    rs.push_back({"octahedron-complex", [] {
        Poset p = build_poset(3, 2);
        expect(order_complex(p).f_vector() == std::vector<int>{6, 12, 8}, "f-vector");
        auto chains = p.maximal_chains();
        expect(chains.size() == 8, "maximal chain count");
        for (const auto& ch : chains) expect(ch.size() == 3, "maximal chain length");
    }});

    rs.push_back({"square-poset", [] {
        Poset p = build_poset(2, 2);
        expect(p.size() == 4 && p.cover_edge_count() == 4 &&
                   p.minimal_elements().size() == 2 && p.maximal_elements().size() == 2,
               "M_2(2) is a square");
    }});

    rs.push_back({"sphere-homology", [] {
        for (int n = 2; n <= 5; ++n) {
            HomologyReport h = homology(order_complex(build_poset(n, 2)));
            std::vector<int> want(n, 0);
            want[0] = 1;
            want[n - 1] += 1;
            expect(h.betti == want && h.torsion_free(),
                   "sphere betti for n=" + std::to_string(n));
        }
    }});

    rs.push_back({"gamma-two-letter-skeleta", [] {
        for (int n = 2; n <= 4; ++n) {
            ChainComplexData c = gamma_chain_complex(n, 2);
            expect(c.f_vector() == std::vector<int>(n, 2), "two simplices per dimension");
            HomologyReport h = homology(c);
            std::vector<int> want(n, 0);
            want[0] = 1;
            want[n - 1] += 1;
            expect(h.betti == want && h.torsion_free(),
                   "gamma sphere betti for n=" + std::to_string(n));
        }
    }});

    rs.push_back({"gamma-membership-example", [] {
        GammaSimplex s{3, {{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {2, 1, 3}}};
        expect(gamma_member(s, 3), "belongs to the third filtration");
        expect(!gamma_member(s, 2), "rejected by the second filtration");
        expect(pair_flips(s, 1, 2) == 1 && pair_flips(s, 1, 3) == 2 && pair_flips(s, 2, 3) == 0,
               "flip counts");
    }});

    rs.push_back({"equivalence-probes", [] {
        auto check = [](const HomologyReport& h, const std::string& what) {
            expect(h.reduced_betti() == std::vector<int>{1, 3, 2} && h.torsion_free(),
                   what + " betti");
        };
        check(homology(order_complex(build_poset(2, 3))), "M_2(3)");
        Poset milgram = build_poset(2, 3, true);
        expect(milgram.size() == 24, "Milgram size");
        check(homology(order_complex(milgram)), "Milgram subposet");
        auto tables = k_enumerate(2, 3);
        expect(tables.size() == 48, "K^(2)(3) size");
        std::vector<std::string> keys;
        for (const PairTable& t : tables) keys.push_back(t.to_json().dump());
        Poset kp(std::move(keys),
                 [&](int i, int j) { return k_leq(tables[i], tables[j]); });
        check(homology(order_complex(kp)), "K^(2)(3)");
    }});

    rs.push_back({"hexagon-downset", [] {
        Poset p = downset_poset(2, parse("1 #2 2 #2 3", 2));
        expect(p.size() == 13, "thirteen objects");
        HomologyReport h = homology(order_complex(p));
        expect(h.reduced_betti() == std::vector<int>{1} && h.torsion_free(), "contractible");
    }});

    rs.push_back({"permutohedron-sizes", [] {
        expect_eq(downset(2, ascending_word(2, 3)).size(), std::size_t{13}, "k=3");
        expect_eq(downset(2, ascending_word(2, 4)).size(), std::size_t{75}, "k=4");
    }});

    rs.push_back({"hexagon-vertex-partition", [] {
        OrderedPartition p = to_partition(parse("(1 #2 2) #1 3", 2));
        expect(p.blocks == std::vector<std::vector<int>>{{1, 2}, {3}}, "partition blocks");
    }});

    rs.push_back({"perm-action-example", [] {
        Expression a = parse("(2 #2 4) #1 (3 #2 5 #2 6) #1 1", 2);
        expect_eq(render(perm_action({6, 5, 4, 3, 2, 1}, a)),
                  std::string("(3 #2 5) #1 (1 #2 2 #2 4) #1 6"), "order-reversal action");
    }});

    rs.push_back({"pi-retract-example", [] {
        Expression a = parse("(1 #2 3) #1 (2 #2 4 #2 5)", 2);
        Expression b = parse("(1 #2 3 #2 4) #1 (2 #2 5)", 2);
        expect_eq(render(pi_retract(a, b)), std::string("(1 #2 3) #1 4 #1 (2 #2 5)"),
                  "retraction value");
    }});

    rs.push_back({"pi-retract-law", [] {
        auto P = permutohedron_elements(3);
        for (const Expression& a : P)
            for (const Expression& b : P) {
                Expression ab = pi_retract(a, b);
                for (const Expression& c : P)
                    expect(pi_retract(a, pi_retract(b, c)) == pi_retract(ab, c),
                           "pi_A pi_B = pi_{pi_A(B)}");
            }
    }});

    rs.push_back({"qmap-example", [] {
        // the printed source's third cell has its #1 factors transposed;
        // the corrected cell reproduces the printed output
        Expression a1 = parse("(1 #2 3) #1 (2 #2 4 #2 5)", 2);
        Expression a2 = parse("(1 #2 3 #2 4) #1 (2 #2 5)", 2);
        Expression a3 = parse("3 #1 (1 #2 2 #2 4 #2 5)", 2);
        expect_eq(render(q_map(4, {a1, a2, a3})), std::string("(3 #3 1) #1 (4 #2 (2 #4 5))"),
                  "q output");
    }});

    rs.push_back({"cubes-left-figure", [] {
        expect(in_G(left_figure(), parse("(1 #2 2) #1 (3 #2 4)", 2), 2),
               "figure belongs to G((1 #2 2) #1 (3 #2 4))");
    }});

    rs.push_back({"nondecomposable-three-cubes", [] {
        expect(!decomposable(three_cube_knot()), "expected nondecomposable");
    }});

    rs.push_back({"nondecomposable-pinwheel", [] {
        expect(!decomposable(pinwheel()), "expected nondecomposable");
    }});

    rs.push_back({"milgram-right-figure", [] {
        expect(decomposable(milgram_right_figure()), "plainly decomposable");
        expect(!milgram_decomposable(milgram_right_figure()), "but not Milgram decomposable");
    }});

    rs.push_back({"shrink-pinwheel", [] {
        expect(milgram_decomposable(shrink(pinwheel())), "shrunk pinwheel separates");
    }});

    rs.push_back({"g-incompatibility", [] {
        expect(!g_compatible(parse("1 #1 2", 2), parse("2 #1 1", 2), 2),
               "contradictory axis-1 requirements");
        expect(g_compatible(parse("1 #1 2", 2), parse("2 #2 1", 2), 2), "diagonal witness");
    }});

    rs.push_back({"k-embedding-example", [] {
        expect(k_leq(pair_table(parse("(2 #2 3) #1 1", 2), 2),
                     pair_table(parse("2 #2 1 #2 3", 2), 2)),
               "fingerprints compare like morphisms");
    }});

    rs.push_back({"cubes-operad-compatibility", [] {
        auto o2 = enumerate_objects(2, 2);
        for (const Expression& outer : o2)
            for (const Expression& x : o2) {
                Configuration got = cubes_compose(realize(outer, 2),
                                                  {realize(x, 2), realize(parse("1", 2), 2)});
                expect(in_G(got, operad_compose(outer, {x, parse("1", 2)}), 2),
                       "composed configuration obeys the composed object");
            }
        std::vector<std::vector<int>> perms{{2, 1, 3}, {3, 1, 2}, {2, 3, 1}};
        for (const Expression& a : enumerate_objects(2, 3))
            for (const auto& s : perms) {
                std::map<int, int> m{{1, s[0]}, {2, s[1]}, {3, s[2]}};
                expect(in_G(permute_labels(s, realize(a, 2)), relabel(a, m), 2),
                       "equivariance of realizations");
            }
    }});

    rs.push_back({"f-intersection-law", [seed, samples] {
        auto objs = enumerate_objects(2, 3);
        std::vector<PairTable> tables;
        for (const Expression& e : objs) tables.push_back(pair_table(e, 2));
        const std::size_t N = objs.size();
        std::vector<std::vector<bool>> leq(N, std::vector<bool>(N));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) leq[i][j] = k_leq(tables[i], tables[j]);
        std::mt19937_64 rng(seed);
        for (int trial = 0; trial < samples; ++trial) {
            Configuration c = random_config(rng, 2, 3);
            std::vector<bool> inG(N);
            for (std::size_t i = 0; i < N; ++i) inG[i] = in_G(c, objs[i], 2);
            for (std::size_t a = 0; a < N; ++a)
                for (std::size_t b = 0; b < N; ++b) {
                    bool fa = false, fb = false, joint = false;
                    for (std::size_t x = 0; x < N; ++x) {
                        if (!inG[x]) continue;
                        if (leq[x][a]) fa = true;
                        if (leq[x][b]) fb = true;
                        if (leq[x][a] && leq[x][b]) joint = true;
                    }
                    expect((fa && fb) == joint, "F(A) cap F(B) = union of F(X)");
                }
        }
    }});

    return rs;
}

/// Run every recipe, print one PASS/FAIL line each, return the number of
/// failures.
inline int run_paper_recipes(std::ostream& out, std::uint64_t seed = 12345, int samples = 500,
                             unsigned jobs = 1) {
    auto rs = paper_recipes(seed, samples);
    std::vector<std::string> errors(rs.size());
    std::vector<char> ok(rs.size(), 0);
    parallel_for(static_cast<int>(rs.size()), jobs, [&](int i) {
        try {
            rs[i].run();
            ok[i] = 1;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    int failures = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (ok[i]) {
            out << "PASS " << rs[i].name << "\n";
        } else {
            ++failures;
            out << "FAIL " << rs[i].name << " (" << errors[i] << ")\n";
        }
    }
    out << (failures == 0 ? "all recipes passed" : std::to_string(failures) + " recipe(s) failed")
        << " (" << rs.size() << " total)\n";
    return failures;
}

}  // namespace mol
