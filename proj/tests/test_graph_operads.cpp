#include <mol/enumeration.hpp>
#include <mol/graph_operads.hpp>
#include <mol/milgram.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace mol;

TEST_CASE("complete graph enumeration counts orientations times colorings") {
    REQUIRE(k_enumerate(2, 3).size() == 48);  // 3! * 2^3
    REQUIRE(k_enumerate(3, 2).size() == 6);
    REQUIRE(k_enumerate(1, 3).size() == 6);
    for (const PairTable& t : k_enumerate(2, 3)) REQUIRE(t.valid());

    SECTION("36 of the 48 tables are fingerprints of objects") {
        int realizable = 0;
        for (const PairTable& t : k_enumerate(2, 3))
            if (from_pair_table(t).has_value()) ++realizable;
        REQUIRE(realizable == 36);
    }
}

TEST_CASE("k_leq extends hom_exists through the fingerprint") {
    Expression a = parse("(2 #2 3) #1 1", 2);
    Expression b = parse("2 #2 1 #2 3", 2);
    REQUIRE(k_leq(pair_table(a, 2), pair_table(b, 2)));
    REQUIRE(k_leq(pair_table(a, 2), pair_table(a, 2)));

    SECTION("it is a partial order on all of K^(2)(3)") {
        auto all = k_enumerate(2, 3);
        const int N = static_cast<int>(all.size());
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (i != j && k_leq(all[i], all[j])) REQUIRE_FALSE(k_leq(all[j], all[i]));
                for (int m = 0; m < N; ++m)
                    if (k_leq(all[i], all[j]) && k_leq(all[j], all[m]))
                        REQUIRE(k_leq(all[i], all[m]));
            }
    }
    SECTION("unrealizable tables still compare against realizable ones") {
        PairTable t(2, {1, 2, 3});
        t.set(1, 2, 1, 1);
        t.set(1, 3, 2, 1);
        t.set(2, 3, 2, 3);
        REQUIRE_FALSE(from_pair_table(t).has_value());
        bool comparable = false;
        for (const Expression& e : enumerate_objects(2, 3)) {
            PairTable te = pair_table(e, 2);
            if (k_leq(te, t) || k_leq(t, te)) comparable = true;
        }
        REQUIRE(comparable);
    }
}

TEST_CASE("the fingerprint embedding is full on the order, n<=3 k=3") {
    for (int n = 2; n <= 3; ++n) {
        auto objs = enumerate_objects(n, 3);
        for (const Expression& a : objs)
            for (const Expression& b : objs)
                REQUIRE(k_leq(pair_table(a, n), pair_table(b, n)) == hom_exists(a, b, n));
    }
}

TEST_CASE("k_compose places outer edges across blocks and inner edges inside") {
    Expression a = parse("1 #1 2", 2);
    Expression b1 = parse("1", 2);
    Expression b2 = parse("1 #2 2", 2);
    PairTable got = k_compose(pair_table(a, 2), {pair_table(b1, 2), pair_table(b2, 2)});
    REQUIRE(got == pair_table(operad_compose(a, {b1, b2}), 2));

    SECTION("the embedding is an operad map, n=2, sizes <= 4") {
        auto o1 = enumerate_objects(2, 1);
        auto o2 = enumerate_objects(2, 2);
        for (const Expression& outer : o2)
            for (const Expression& x : o2)
                for (const Expression& y : o2) {
                    PairTable lhs =
                        k_compose(pair_table(outer, 2), {pair_table(x, 2), pair_table(y, 2)});
                    REQUIRE(lhs == pair_table(operad_compose(outer, {x, y}), 2));
                }
        for (const Expression& outer : enumerate_objects(2, 3))
            for (const Expression& x : o2) {
                std::vector<Expression> inners{x, o1[0], o1[0]};
                std::vector<PairTable> tin{pair_table(x, 2), pair_table(o1[0], 2),
                                           pair_table(o1[0], 2)};
                REQUIRE(k_compose(pair_table(outer, 2), tin) ==
                        pair_table(operad_compose(outer, inners), 2));
            }
    }
    SECTION("identity inners") {
        PairTable x = pair_table(parse("(2 #2 3) #1 1", 2), 2);
        PairTable one(2, {1});
        REQUIRE(k_compose(x, {one, one, one}) == x);
    }
}

TEST_CASE("gamma membership counts pair flips") {
    GammaSimplex s{3, {{1, 2, 3}, {2, 1, 3}, {2, 3, 1}, {2, 1, 3}}};
    REQUIRE(pair_flips(s, 1, 2) == 1);
    REQUIRE(pair_flips(s, 1, 3) == 2);
    REQUIRE(pair_flips(s, 2, 3) == 0);
    REQUIRE(gamma_member(s, 3));
    REQUIRE_FALSE(gamma_member(s, 2));

    SECTION("vertices belong to every filtration") {
        GammaSimplex v{3, {{3, 1, 2}}};
        for (int n = 1; n <= 4; ++n) REQUIRE(gamma_member(v, n));
    }
    SECTION("json round trip") {
        REQUIRE(GammaSimplex::from_json(s.to_json()) == s);
    }
}

TEST_CASE("gamma simplex generation") {
    SECTION("two letters: two simplices per dimension up to n-1") {
        for (int n = 1; n <= 4; ++n) {
            auto graded = gamma_simplices(n, 2);
            REQUIRE(graded.size() == static_cast<std::size_t>(n));
            for (const auto& level : graded) REQUIRE(level.size() == 2);
        }
    }
    SECTION("the first filtration holds vertices only") {
        for (int k = 2; k <= 4; ++k) {
            auto graded = gamma_simplices(1, k);
            REQUIRE(graded.size() == 1);
            std::size_t fact = 1;
            for (int i = 2; i <= k; ++i) fact *= i;
            REQUIRE(graded[0].size() == fact);
        }
    }
    SECTION("top dimension of Gamma^(2)(3) is 3") {
        auto graded = gamma_simplices(2, 3);
        REQUIRE(graded.size() == 4);  // dimensions 0..3 = C(3,2)*(2-1)
        REQUIRE(graded[0].size() == 6);
        for (const auto& level : graded)
            for (const GammaSimplex& s : level) {
                REQUIRE(s.nondegenerate());
                REQUIRE(gamma_member(s, 2));
            }
    }
}

TEST_CASE("forgetting colors maps chains into the filtration") {
    Expression a = parse("1 #1 2", 2);
    SECTION("same orientation gives a degenerate simplex") {
        GammaSimplex s = forget_and_map({a, parse("1 #2 2", 2)}, 2);
        REQUIRE(s.chain == std::vector<std::vector<int>>{{1, 2}, {1, 2}});
        REQUIRE_FALSE(s.nondegenerate());
    }
    SECTION("an orientation flip gives a nondegenerate 1-simplex") {
        GammaSimplex s = forget_and_map({a, parse("2 #2 1", 2)}, 2);
        REQUIRE(s.chain == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
        REQUIRE(s.nondegenerate());
        REQUIRE(gamma_member(s, 2));
    }
    SECTION("every maximal chain of M_2(3) lands in Gamma^(2)(3)") {
        auto objs = enumerate_objects(2, 3);
        Poset p = make_expression_poset(objs, 2);
        for (const auto& chain : p.maximal_chains()) {
            std::vector<Expression> exprs;
            for (int idx : chain) exprs.push_back(parse(p.key(idx), 2));
            REQUIRE(gamma_member(forget_and_map(exprs, 2), 2));
        }
    }
    SECTION("any chain in K^(n) flips each pair at most n-1 times") {
        auto all = k_enumerate(2, 3);
        for (const PairTable& x : all)
            for (const PairTable& y : all) {
                if (!k_leq(x, y)) continue;
                for (const PairTable& z : all) {
                    if (!k_leq(y, z)) continue;
                    REQUIRE(gamma_member(forget_and_map(std::vector<PairTable>{x, y, z}), 2));
                }
            }
    }
}

TEST_CASE("membership is equivalent to all two-letter restrictions") {
    auto restrict_chain = [](const GammaSimplex& s, int a, int b) {
        GammaSimplex out{2, {}};
        for (const auto& w : s.chain) {
            std::vector<int> sub;
            for (int x : w)
                if (x == a || x == b) sub.push_back(x == a ? 1 : 2);
            out.chain.push_back(sub);
        }
        return out;
    };
    for (int n = 2; n <= 3; ++n)
        for (const auto& level : gamma_simplices(2, 3))
            for (const GammaSimplex& s : level) {
                bool all2 = true;
                for (int a = 1; a <= 3; ++a)
                    for (int b = a + 1; b <= 3; ++b)
                        if (!gamma_member(restrict_chain(s, a, b), n)) all2 = false;
                REQUIRE(gamma_member(s, n) == all2);
            }
}

TEST_CASE("gamma composition splices words blockwise") {
    GammaSimplex outer{2, {{2, 1}}};
    GammaSimplex in1{1, {{1}}};
    GammaSimplex in2{2, {{2, 1}}};
    GammaSimplex got = gamma_compose(outer, {in1, in2});
    REQUIRE(got.k == 3);
    REQUIRE(got.chain == std::vector<std::vector<int>>{{3, 2, 1}});

    SECTION("compatible with k_compose under color forgetting") {
        auto o2 = enumerate_objects(2, 2);
        for (const Expression& outer_e : o2)
            for (const Expression& x : o2) {
                PairTable composed = k_compose(pair_table(outer_e, 2),
                                               {pair_table(x, 2), pair_table(parse("1", 2), 2)});
                GammaSimplex lhs = forget_and_map(std::vector<PairTable>{composed});
                GammaSimplex rhs = gamma_compose(
                    forget_and_map(std::vector<PairTable>{pair_table(outer_e, 2)}),
                    {forget_and_map(std::vector<PairTable>{pair_table(x, 2)}),
                     GammaSimplex{1, {{1}}}});
                REQUIRE(lhs == rhs);
            }
    }
    SECTION("length mismatch is rejected") {
        REQUIRE_THROWS_AS(gamma_compose(outer, {in1, GammaSimplex{2, {{1, 2}, {2, 1}}}}),
                          std::invalid_argument);
    }
}
