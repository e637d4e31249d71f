#include <doctest.h>

#include <random>

#include "ultraplanar/cut_oracle.hpp"
#include "ultraplanar/errors.hpp"
#include "ultraplanar/generators.hpp"
#include "ultraplanar/oracles.hpp"

using namespace ultraplanar;

namespace {

PlanarGraph triangle() { return straight_line_graph({{0, 0}, {1, 0}, {0.5, 1}}, {{0, 1}, {1, 2}, {0, 2}}); }

PlanarGraph four_cycle() {
    return straight_line_graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

}  // namespace

TEST_CASE("cut oracle: triangle (-3,1,1)") {
    const auto g = triangle();
    const std::vector<double> w{-3, 1, 1};
    const CutColumn c = min_weight_cut(g, w);
    CHECK(c.weight == -2.0);
    CHECK((c.z == BinaryIndicator{1, 1, 0} || c.z == BinaryIndicator{1, 0, 1}));
    CHECK(oracles::brute_force_min_cut(g, w).value == -2.0);
}

TEST_CASE("cut oracle: gadget calibration on K3 covers every cut") {
    // Each of the four cuts of a triangle must be reachable by making it
    // the unique optimum.
    const auto g = triangle();
    const std::vector<BinaryIndicator> cuts{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (const auto& target : cuts) {
        std::vector<double> w(3);
        for (int e = 0; e < 3; ++e) w[e] = target[e] ? -2.0 : 1.0;
        const CutColumn c = min_weight_cut(g, w);
        CHECK(c.z == target);
        CHECK(c.weight == -4.0);
    }
    const CutColumn none = min_weight_cut(g, std::vector<double>{1, 1, 1});
    CHECK(none.weight == 0.0);
    CHECK(none.z == BinaryIndicator{0, 0, 0});
}

TEST_CASE("cut oracle: 4-cycle and all-positive") {
    const auto g = four_cycle();
    CHECK(min_weight_cut(g, std::vector<double>{-5, 1, 1, 1}).weight == -4.0);
    CHECK(oracles::brute_force_min_cut(g, std::vector<double>{-5, 1, 1, 1}).value == -4.0);
    CHECK(min_weight_cut(g, std::vector<double>{1, 2, 3, 4}).weight == 0.0);
}

TEST_CASE("cut oracle: bridges are cut exactly when negative") {
    // Path 0-1-2 plus a triangle hanging off 2.
    const auto g = straight_line_graph({{0, 0}, {1, 0}, {2, 0}, {3, -1}, {3, 1}},
                                       {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 4}});
    const std::vector<double> w{-1, 2, -3, 1, 1};
    const CutColumn c = min_weight_cut(g, w);
    CHECK(c.weight == -3.0);
    CHECK(c.weight == oracles::brute_force_min_cut(g, w).value);
    CHECK(c.z[0] == 1);
    CHECK(c.z[1] == 0);
}

TEST_CASE("cut oracle: returned column is a two-way cut of the stated weight") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        RandomGraphOptions opt;
        opt.vertices = std::uniform_int_distribution<int>(3, 10)(rng);
        opt.delete_fraction = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
        opt.allow_bridges = trial % 3 == 0;
        const PlanarGraph g = random_planar_graph(opt, rng);
        std::vector<double> w(g.num_edges());
        for (double& x : w) x = std::uniform_int_distribution<int>(-10, 10)(rng);
        const CutColumn c = min_weight_cut(g, w);
        const auto brute = oracles::brute_force_min_cut(g, w);
        REQUIRE(c.weight == brute.value);
        double s = 0;
        for (int e = 0; e < g.num_edges(); ++e) s += c.z[e] * w[e];
        CHECK(s == c.weight);
        CHECK_NOTHROW((void)cut_sides(g, c.z));
    }
}

TEST_CASE("cut oracle: rejects disconnected graphs") {
    const auto g = straight_line_graph({{0, 0}, {1, 0}, {5, 5}, {6, 5}}, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(CutOracle{g}, Error);
}

TEST_CASE("cut oracle: gadget sizes") {
    const auto g = triangle();
    const ExpandedDual k3 = fisher_expand(dual_graph(g, trace_faces(g), std::vector<double>{1, 2, 3}));
    CHECK(k3.graph.num_nodes() == 6);
    CHECK(k3.graph.num_edges() == 9);
    int external = 0;
    for (const auto& t : k3.tags) external += t.external;
    CHECK(external == 3);

    const auto c = four_cycle();
    const Triangulation tri = triangulate(c, trace_faces(c));
    const ExpandedDual x = fisher_expand(dual_graph(tri.graph, tri.faces, std::vector<double>(6, 1.0)));
    CHECK(x.graph.num_nodes() == 12);
    external = 0;
    for (const auto& t : x.tags) external += t.external;
    CHECK(external == 6);
    CHECK(x.graph.num_edges() - external == 12);

    // The untriangulated 4-cycle has dual nodes of degree 4.
    try {
        (void)fisher_expand(dual_graph(c, trace_faces(c), std::vector<double>(4, 1.0)));
        FAIL("expected NotTriangulated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotTriangulated);
    }
}
