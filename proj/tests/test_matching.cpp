#include <doctest.h>

#include <random>

#include "ultraplanar/errors.hpp"
#include "ultraplanar/matching.hpp"
#include "ultraplanar/oracles.hpp"

using namespace ultraplanar;

TEST_CASE("matching: 4-cycle") {
    MatchingGraph g(4);
    g.add_edge(0, 1, 1);
    g.add_edge(1, 2, 3);
    g.add_edge(2, 3, 1);
    g.add_edge(3, 0, 3);
    const Matching m = min_weight_perfect_matching(g);
    CHECK(m.weight == 2.0);
    CHECK(m.edges == std::vector<int>{0, 2});
    CHECK(oracles::brute_force_mwpm(g).weight == 2.0);
}

TEST_CASE("matching: K4 unit weights") {
    MatchingGraph g(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.add_edge(u, v, 1);
    CHECK(min_weight_perfect_matching(g).weight == 2.0);
    CHECK(oracles::brute_force_mwpm(g).weight == 2.0);
}

TEST_CASE("matching: odd node count and missing perfect matching") {
    MatchingGraph odd(3);
    odd.add_edge(0, 1, 1);
    odd.add_edge(1, 2, 1);
    CHECK_THROWS_AS(min_weight_perfect_matching(odd), Error);
    CHECK_THROWS_AS(oracles::brute_force_mwpm(odd), Error);

    MatchingGraph star(4);
    star.add_edge(0, 1, 1);
    star.add_edge(0, 2, 1);
    star.add_edge(0, 3, 1);
    try {
        (void)min_weight_perfect_matching(star);
        FAIL("expected NoPerfectMatching");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPerfectMatching);
    }
}

TEST_CASE("matching: negative weights and parallel edges") {
    MatchingGraph g(2);
    g.add_edge(0, 1, 5);
    g.add_edge(1, 0, -7);
    const Matching m = min_weight_perfect_matching(g);
    CHECK(m.weight == -7.0);
    CHECK(m.edges == std::vector<int>{1});
    CHECK(m.mate[0] == 1);
}

TEST_CASE("matching: agrees with exhaustive search on random graphs") {
    std::mt19937_64 rng(7);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 * std::uniform_int_distribution<int>(1, 6)(rng);
        const double p = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
        MatchingGraph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (std::bernoulli_distribution(p)(rng))
                    g.add_edge(u, v, std::uniform_int_distribution<int>(-20, 20)(rng));
        bool fast_ok = true, slow_ok = true;
        Matching fast, slow;
        try {
            fast = min_weight_perfect_matching(g);
        } catch (const Error&) {
            fast_ok = false;
        }
        try {
            slow = oracles::brute_force_mwpm(g);
        } catch (const Error&) {
            slow_ok = false;
        }
        REQUIRE(fast_ok == slow_ok);
        if (!fast_ok) continue;
        ++compared;
        CHECK(fast.weight == slow.weight);
        for (int v = 0; v < n; ++v) CHECK(fast.mate[fast.mate[v]] == v);
    }
    CHECK(compared > 150);
}
