#include <doctest.h>

#include <sstream>

#include "ultraplanar/errors.hpp"
#include "ultraplanar/io.hpp"

using namespace ultraplanar;

TEST_CASE("io: 2x2 grid") {
    const Instance inst = gen_grid(2, 2, 1, 0.0, 1);
    CHECK(inst.graph.num_vertices() == 4);
    CHECK(inst.graph.num_edges() == 4);
    CHECK_NOTHROW(validate_embedding(inst.graph));
}

TEST_CASE("io: bad grid dimensions") {
    try {
        (void)gen_grid(1, 4, 2, 0.0, 1);
        FAIL("expected BadDimensions");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadDimensions);
    }
}

TEST_CASE("io: instance round trip") {
    Instance inst = gen_grid(3, 4, 2, 0.37, 99);
    inst.graph = PlanarGraph(inst.graph.num_vertices(),
                             [&] {
                                 auto es = inst.graph.edges();
                                 es[0].length = 2.5;
                                 return es;
                             }(),
                             inst.graph.rotations());
    const std::string text = instance_to_json(inst);
    const Instance back = instance_from_json(text);
    CHECK(back.graph.num_vertices() == inst.graph.num_vertices());
    REQUIRE(back.graph.num_edges() == inst.graph.num_edges());
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
        CHECK(back.graph.edge(e).u == inst.graph.edge(e).u);
        CHECK(back.graph.edge(e).v == inst.graph.edge(e).v);
        CHECK(back.graph.edge(e).theta == inst.graph.edge(e).theta);
        CHECK(back.graph.edge(e).length == inst.graph.edge(e).length);
    }
    CHECK(back.graph.rotations() == inst.graph.rotations());
    CHECK(back.schedule.thresholds() == inst.schedule.thresholds());
    CHECK(back.metadata == inst.metadata);
    CHECK(instance_to_json(back) == text);
}

TEST_CASE("io: invalid documents are rejected with input errors") {
    auto kind = [](const std::string& text) {
        try {
            (void)instance_from_json(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    CHECK(kind("{") == ErrorKind::InvalidInput);
    CHECK(kind(R"({"format":"other","version":1})") == ErrorKind::InvalidInput);
    const std::string head = R"({"format":"ultraplanar-instance","version":1,)";
    // Negative theta.
    CHECK(kind(head + R"("num_vertices":2,"edges":[{"u":0,"v":1,"theta":-1}],"rotation":[[0],[0]],"levels":[1]})") ==
          ErrorKind::InvalidInput);
    // Decreasing schedule.
    CHECK(kind(head + R"("num_vertices":2,"edges":[{"u":0,"v":1,"theta":1}],"rotation":[[0],[0]],"levels":[2,1]})") ==
          ErrorKind::NonIncreasingSchedule);
    // Two components.
    CHECK(kind(head + R"("num_vertices":4,"edges":[{"u":0,"v":1,"theta":1},{"u":2,"v":3,"theta":1}],)"
                      R"("rotation":[[0],[0],[1],[1]],"levels":[1]})") == ErrorKind::Disconnected);
    // K4 with a rotation that is not planar: every vertex lists its edges
    // in increasing id order.
    CHECK(kind(head + R"("num_vertices":4,"edges":[{"u":0,"v":1,"theta":1},{"u":0,"v":2,"theta":1},)"
                      R"({"u":0,"v":3,"theta":1},{"u":1,"v":2,"theta":1},{"u":1,"v":3,"theta":1},{"u":2,"v":3,"theta":1}],)"
                      R"("rotation":[[0,1,2],[0,3,4],[1,3,5],[2,4,5]],"levels":[1]})") == ErrorKind::EulerViolation);
}

TEST_CASE("io: noise-free grid instance has its planted hierarchy at zero distortion") {
    const Instance inst = gen_grid(4, 4, 2, 0.0, 3);
    BinaryHierarchy planted = planted_hierarchy(4, 4, 2);
    validate_hierarchy(inst.graph, planted, 2);
    const auto um = ultrametric_from_hierarchy(inst.graph, planted, inst.schedule, false);
    CHECK(distortion(inst.graph.thetas(), inst.graph.lengths(), um.edge_distance) == 0.0);
    CHECK(count_labels(planted.labels[1]) == 2);
    CHECK(count_labels(planted.labels[0]) == 4);
}

TEST_CASE("io: config parsing") {
    const SolverConfig c = config_from_json(R"({"epsilon":0,"tau":1e-5,"tau_mode":"absolute","thresholds":[0.5]})");
    CHECK(c.epsilon == 0.0);
    CHECK(c.tau_mode == TauMode::Absolute);
    CHECK(c.thresholds == std::vector<double>{0.5});
    CHECK_THROWS_AS(config_from_json(R"({"tau":-1})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"thresholds":[1.0]})"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"bogus":1})"), Error);
    const SolverConfig d = config_from_json(config_to_json(c));
    CHECK(d.tau == c.tau);
}

TEST_CASE("io: trace csv header and rows") {
    const Instance inst = gen_grid(3, 3, 2, 0.0, 1);
    const SolveReport r = run(inst);
    std::ostringstream os;
    write_trace_csv(r, os);
    const std::string s = os.str();
    CHECK(s.rfind("iter,dual_obj,penalized_obj,residual,lb,best_lb,ub,best_ub,gap,lp_iters,pool_1,pool_2\n", 0) == 0);
    int lines = 0;
    for (char ch : s) lines += ch == '\n';
    CHECK(lines == r.iterations + 1);
}

TEST_CASE("io: written hierarchies re-validate") {
    const Instance inst = gen_grid(5, 5, 3, 0.7, 4);
    const SolveReport r = run(inst);
    std::ostringstream os;
    write_hierarchy_json(inst, r.hierarchy, os);
    BinaryHierarchy back = hierarchy_from_json(os.str());
    CHECK(back.levels == r.hierarchy.levels);
    const auto labels = back.labels;
    validate_hierarchy(inst.graph, back, 3);
    CHECK(back.labels == labels);
}
