#include <doctest.h>

#include <random>

#include "ultraplanar/errors.hpp"
#include "ultraplanar/generators.hpp"
#include "ultraplanar/graph.hpp"
#include "ultraplanar/oracles.hpp"

using namespace ultraplanar;

namespace {

PlanarGraph triangle() { return straight_line_graph({{0, 0}, {1, 0}, {0.5, 1}}, {{0, 1}, {1, 2}, {0, 2}}); }

PlanarGraph single_edge() { return straight_line_graph({{0, 0}, {1, 0}}, {{0, 1}}); }

LayerWeights raw_layers(int num_edges, std::vector<std::vector<double>> per_level) {
    LayerWeights lw;
    lw.levels = static_cast<int>(per_level.size());
    lw.num_edges = num_edges;
    lw.theta.assign(1, std::vector<double>(num_edges, 0.0));
    for (auto& w : per_level) lw.theta.push_back(std::move(w));
    lw.plus = lw.minus = lw.theta;
    for (auto& v : lw.plus)
        for (double& x : v) x = std::max(0.0, x);
    for (auto& v : lw.minus)
        for (double& x : v) x = std::min(0.0, x);
    return lw;
}

}  // namespace

TEST_CASE("oracles: partition counts are Bell numbers") {
    const long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
    for (int n = 1; n <= 10; ++n) {
        oracles::PartitionEnumeration p(n);
        long count = 0;
        do ++count;
        while (p.next());
        CHECK(count == bell[n]);
    }
    CHECK_THROWS_AS(oracles::PartitionEnumeration(11), Error);
}

TEST_CASE("oracles: multicut examples") {
    CHECK(oracles::enumerate_multicuts(triangle()).size() == 5);
    const auto all_cut = oracles::brute_force_multicut(triangle(), std::vector<double>{-3, -3, -3});
    CHECK(all_cut.value == -9.0);
    CHECK(count_labels(all_cut.labels) == 3);
    const auto none = oracles::brute_force_multicut(triangle(), std::vector<double>{1, 2, 3});
    CHECK(none.value == 0.0);
    CHECK(count_labels(none.labels) == 1);
    CHECK(oracles::brute_force_min_cut(triangle(), std::vector<double>{1, 1, 1}).value == 0.0);
}

TEST_CASE("oracles: hierarchy examples") {
    const auto a = oracles::brute_force_hierarchy(single_edge(), raw_layers(1, {{-5}, {2}}), 2);
    CHECK(a.value == -5.0);
    CHECK(a.levels == std::vector<BinaryIndicator>{{1}, {0}});
    const auto b = oracles::brute_force_hierarchy(single_edge(), raw_layers(1, {{-5}, {-2}}), 2);
    CHECK(b.value == -7.0);
    CHECK(b.levels == std::vector<BinaryIndicator>{{1}, {1}});
}

TEST_CASE("oracles: one-level hierarchy is a multicut") {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 40; ++trial) {
        RandomGraphOptions opt;
        opt.vertices = std::uniform_int_distribution<int>(3, 7)(rng);
        const PlanarGraph g = random_planar_graph(opt, rng);
        std::vector<double> w(g.num_edges());
        for (double& x : w) x = std::uniform_int_distribution<int>(-5, 5)(rng);
        CHECK(oracles::brute_force_hierarchy(g, raw_layers(g.num_edges(), {w}), 1).value ==
              oracles::brute_force_multicut(g, w).value);
    }
}

TEST_CASE("oracles: matching examples") {
    MatchingGraph c4(4);
    c4.add_edge(0, 1, 1);
    c4.add_edge(1, 2, 2);
    c4.add_edge(2, 3, 1);
    c4.add_edge(3, 0, 2);
    CHECK(oracles::brute_force_mwpm(c4).weight == 2.0);
    MatchingGraph odd(3);
    odd.add_edge(0, 1, 1);
    try {
        oracles::brute_force_mwpm(odd);
        FAIL("expected NoPerfectMatching");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoPerfectMatching);
    }
}

TEST_CASE("oracles: cycle check examples") {
    CHECK(oracles::brute_force_cycle_check(triangle(), std::vector<double>{0.8, 0.3, 0.3}).size() == 1);
    CHECK(oracles::brute_force_cycle_check(triangle(), std::vector<double>{1, 1, 0}).empty());
    CHECK(oracles::brute_force_cycle_check(triangle(), std::vector<double>{1, 1, 1}).empty());
    CHECK(oracles::enumerate_cycles(grid_graph(2, 3)).size() == 3);
}

TEST_CASE("oracles: size caps are hard errors") {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    const PlanarGraph big = grid_graph(4, 6);
    CHECK(kind([&] { oracles::brute_force_min_cut(big, std::vector<double>(big.num_edges(), 1.0)); }) ==
          ErrorKind::TooLarge);
    CHECK(kind([&] { oracles::brute_force_multicut(big, std::vector<double>(big.num_edges(), 1.0)); }) ==
          ErrorKind::TooLarge);
    const PlanarGraph g = grid_graph(2, 2);
    CHECK(kind([&] { oracles::brute_force_hierarchy(g, raw_layers(4, {{1, 1, 1, 1}}), 4); }) == ErrorKind::TooLarge);
    CHECK(kind([&] { oracles::brute_force_cycle_check(big, std::vector<double>(big.num_edges(), 0.0)); }) ==
          ErrorKind::TooLarge);
    MatchingGraph m(14);
    for (int v = 0; v + 1 < 14; v += 2) m.add_edge(v, v + 1, 1);
    CHECK(kind([&] { oracles::brute_force_mwpm(m); }) == ErrorKind::TooLarge);
}

TEST_CASE("oracles: conic combinations of cuts satisfy the cycle inequalities") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        RandomGraphOptions opt;
        opt.vertices = std::uniform_int_distribution<int>(3, 6)(rng);
        opt.delete_fraction = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
        const PlanarGraph g = random_planar_graph(opt, rng);
        if (g.num_edges() > oracles::kMaxCycleEdges) continue;
        const int n = g.num_vertices();
        std::vector<double> x(g.num_edges(), 0.0);
        const int pool = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int k = 0; k < pool; ++k) {
            std::vector<std::uint8_t> side(n);
            for (auto& s : side) s = std::bernoulli_distribution(0.5)(rng);
            const BinaryIndicator z = boundary_indicator(g, side);
            const double gamma = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            for (std::size_t e = 0; e < z.size(); ++e) x[e] += gamma * z[e];
        }
        for (double& xe : x) xe = std::min(1.0, xe);
        CHECK(oracles::brute_force_cycle_check(g, x).empty());
    }
}
