#include <doctest.h>

#include <functional>
#include <random>

#include "ultraplanar/cut_oracle.hpp"
#include "ultraplanar/errors.hpp"
#include "ultraplanar/generators.hpp"
#include "ultraplanar/graph.hpp"
#include "ultraplanar/oracles.hpp"

using namespace ultraplanar;

namespace {

PlanarGraph triangle() { return straight_line_graph({{0, 0}, {1, 0}, {0.5, 1}}, {{0, 1}, {1, 2}, {0, 2}}); }

PlanarGraph four_cycle() {
    return straight_line_graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

PlanarGraph path3() { return straight_line_graph({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}}); }

PlanarGraph k4() {
    return straight_line_graph({{0, 0}, {2, 0}, {1, 2}, {1, 0.7}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("graph: faces of small embeddings") {
    CHECK(validate_embedding(grid_graph(2, 2)).num_faces() == 2);
    CHECK(validate_embedding(k4()).num_faces() == 4);
    const FaceSet f = validate_embedding(triangle());
    CHECK(f.num_faces() == 2);
    for (EdgeId e = 0; e < 3; ++e) {
        const auto [a, b] = f.faces_of_edge(e);
        CHECK(a != b);
    }
}

TEST_CASE("graph: swapping two edges at a K4 vertex breaks planarity") {
    const PlanarGraph g = k4();
    auto rot = g.rotations();
    std::swap(rot[3][0], rot[3][1]);
    const PlanarGraph bad(g.num_vertices(), g.edges(), rot);
    CHECK(trace_faces(bad).num_faces() != 4);
    CHECK(kind_of([&] { validate_embedding(bad); }) == ErrorKind::EulerViolation);
}

TEST_CASE("graph: embedding validation errors") {
    const PlanarGraph two(4, {{0, 1}, {2, 3}}, {{0}, {0}, {1}, {1}});
    CHECK(kind_of([&] { validate_embedding(two); }) == ErrorKind::Disconnected);
    CHECK(kind_of([&] { validate_embedding(path3()); }) == ErrorKind::BridgeDetected);
    CHECK_FALSE(is_connected(two));
    CHECK(find_bridges(path3()) == std::vector<EdgeId>{0, 1});
    CHECK(find_bridges(four_cycle()).empty());
}

TEST_CASE("graph: dual graphs") {
    const PlanarGraph g = triangle();
    const DualGraph d = dual_graph(g, trace_faces(g), std::vector<double>{1, 2, 3});
    CHECK(d.num_nodes == 2);
    CHECK(d.edges.size() == 3);
    for (const auto& e : d.edges) CHECK(e.a != e.b);
    const PlanarGraph c = four_cycle();
    CHECK(dual_graph(c, trace_faces(c), std::vector<double>(4, 0.0)).num_nodes == 2);
    CHECK(kind_of([&] { dual_graph(g, trace_faces(g), std::vector<double>{1, 2}); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("graph: components and multicuts") {
    CHECK(count_labels(connected_components(path3(), BinaryIndicator{1, 1})) == 3);
    CHECK(count_labels(connected_components(triangle(), BinaryIndicator{1, 0, 0})) == 1);
    CHECK(count_labels(connected_components(triangle(), BinaryIndicator{0, 0, 0})) == 1);
    CHECK_FALSE(is_multicut(triangle(), BinaryIndicator{1, 0, 0}));
    CHECK(is_multicut(triangle(), BinaryIndicator{1, 1, 0}));
    CHECK(is_multicut(triangle(), BinaryIndicator{0, 0, 0}));
}

TEST_CASE("graph: cycle inequality separation examples") {
    const auto v = separate_cycle_inequalities(triangle(), std::vector<double>{0.8, 0.3, 0.3});
    REQUIRE(v.size() == 1);
    CHECK(v[0].edge == 0);
    CHECK(v[0].path_weight == doctest::Approx(0.6));
    CHECK(separate_cycle_inequalities(triangle(), std::vector<double>{0.5, 0.3, 0.3}).empty());
    CHECK(separate_cycle_inequalities(triangle(), std::vector<double>{1, 1, 0}).empty());
}

TEST_CASE("graph: cycle separation agrees with cycle enumeration") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        RandomGraphOptions opt;
        opt.vertices = std::uniform_int_distribution<int>(3, 6)(rng);
        opt.delete_fraction = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
        const PlanarGraph g = random_planar_graph(opt, rng);
        if (g.num_edges() > oracles::kMaxCycleEdges) continue;
        std::vector<double> x(g.num_edges());
        for (double& xe : x) xe = std::uniform_int_distribution<int>(0, 10)(rng) / 10.0;
        const auto fast = separate_cycle_inequalities(g, x);
        const auto slow = oracles::brute_force_cycle_check(g, x);
        CHECK(fast.empty() == slow.empty());
        for (const auto& v : fast) {
            CHECK(v.path_weight < v.edge_value);
            double s = 0;
            for (EdgeId e : v.path) s += x[e];
            CHECK(s == doctest::Approx(v.path_weight));
        }
    }
}

TEST_CASE("graph: isocuts") {
    const auto p = isocuts(path3(), BinaryIndicator{1, 1});
    CHECK(p == std::vector<BinaryIndicator>{{1, 0}, {1, 1}, {0, 1}});
    CHECK(isocuts(path3(), BinaryIndicator{0, 0}) == std::vector<BinaryIndicator>{{0, 0}});
    const BinaryIndicator star_a{1, 0, 0, 1};
    const auto c = isocuts(four_cycle(), star_a);
    CHECK(c.size() == 2);
    CHECK(c[0] == star_a);
    CHECK(c[1] == star_a);
    CHECK(unique_columns(c).size() == 1);
}

TEST_CASE("graph: every multicut is half the sum of its isocuts") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 60; ++trial) {
        RandomGraphOptions opt;
        opt.vertices = std::uniform_int_distribution<int>(3, 6)(rng);
        opt.allow_bridges = trial % 2 == 0;
        const PlanarGraph g = random_planar_graph(opt, rng);
        for (const auto& x : oracles::enumerate_multicuts(g)) {
            std::vector<int> sum(x.size(), 0);
            for (const auto& z : isocuts(g, x)) {
                CHECK(boundary_indicator(g, cut_sides(g, z)) == z);
                for (std::size_t e = 0; e < z.size(); ++e) sum[e] += z[e];
            }
            for (std::size_t e = 0; e < x.size(); ++e) CHECK(sum[e] == 2 * x[e]);
        }
    }
}

TEST_CASE("graph: triangulation") {
    const PlanarGraph c = four_cycle();
    const Triangulation t = triangulate(c, trace_faces(c));
    CHECK(t.original_edges == 4);
    CHECK(t.graph.num_edges() == 6);
    CHECK(t.faces.num_faces() == 4);
    for (EdgeId e = 4; e < 6; ++e) {
        CHECK(t.graph.edge(e).fill);
        CHECK(t.graph.edge(e).theta == 0.0);
    }
    const PlanarGraph k3 = triangle();
    CHECK(triangulate(k3, trace_faces(k3)).graph.num_edges() == 3);

    const PlanarGraph g = grid_graph(3, 3);
    const Triangulation tg = triangulate(g, trace_faces(g));
    for (const auto& f : tg.faces.faces) CHECK(f.size() == 3);
    CHECK(tg.graph.num_vertices() - tg.graph.num_edges() + tg.faces.num_faces() == 2);
    CHECK_NOTHROW(validate_embedding(tg.graph));
}

TEST_CASE("graph: splitting at bridges") {
    // Two triangles joined by a bridge.
    const auto g = straight_line_graph({{0, 0}, {1, 0}, {0.5, 1}, {3, 0}, {4, 0}, {3.5, 1}},
                                       {{0, 1}, {1, 2}, {2, 0}, {1, 3}, {3, 4}, {4, 5}, {5, 3}});
    const BridgeDecomposition d = split_at_bridges(g);
    CHECK(d.bridges == std::vector<EdgeId>{3});
    REQUIRE(d.blocks.size() == 2);
    for (const auto& b : d.blocks) {
        CHECK(b.graph.num_edges() == 3);
        CHECK_NOTHROW(validate_embedding(b.graph));
    }
}
