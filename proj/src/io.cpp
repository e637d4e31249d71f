#include "ultraplanar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "ultraplanar/errors.hpp"
#include "ultraplanar/generators.hpp"

namespace ultraplanar {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

template <class T>
T get(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        bad(std::string("field '") + key + "': " + e.what());
    }
}

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void validate_instance(const Instance& inst) {
    const PlanarGraph& g = inst.graph;
    if (!is_connected(g)) throw Error(ErrorKind::Disconnected, "graph is not connected");
    const FaceSet faces = trace_faces(g);
    if (g.num_vertices() - g.num_edges() + faces.num_faces() != 2)
        throw Error(ErrorKind::EulerViolation, "rotation system is not a planar embedding (V - E + F != 2)");
    if (inst.schedule.levels() < 1) throw Error(ErrorKind::InvalidInput, "at least one level is required");
    (void)inst.layer_weights();
}

Instance instance_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object()) bad("instance must be a JSON object");
    if (get<std::string>(j, "format") != kInstanceFormat) bad("unknown instance format");
    if (get<int>(j, "version") != kInstanceVersion) bad("unsupported instance version");
    const int n = get<int>(j, "num_vertices");
    std::vector<Edge> edges;
    for (const auto& e : get<json>(j, "edges")) {
        Edge ed;
        ed.u = get<int>(e, "u");
        ed.v = get<int>(e, "v");
        ed.theta = get<double>(e, "theta");
        ed.length = e.contains("length") ? get<double>(e, "length") : 1.0;
        edges.push_back(ed);
    }
    auto rotation = get<std::vector<std::vector<EdgeId>>>(j, "rotation");
    Instance inst{PlanarGraph(n, std::move(edges), std::move(rotation)),
                  LevelSchedule(get<std::vector<double>>(j, "levels")),
                  {}};
    if (j.contains("metadata")) {
        for (const auto& [k, v] : j.at("metadata").items()) {
            if (!v.is_string()) bad("metadata values must be strings");
            inst.metadata[k] = v.get<std::string>();
        }
    }
    validate_instance(inst);
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["format"] = kInstanceFormat;
    j["version"] = kInstanceVersion;
    j["num_vertices"] = inst.graph.num_vertices();
    json edges = json::array();
    for (const Edge& e : inst.graph.edges())
        edges.push_back({{"u", e.u}, {"v", e.v}, {"theta", e.theta}, {"length", e.length}});
    j["edges"] = std::move(edges);
    j["rotation"] = inst.graph.rotations();
    j["levels"] = inst.schedule.thresholds();
    j["metadata"] = inst.metadata;
    return j.dump(1) + "\n";
}

Instance load_instance(const std::filesystem::path& path) { return instance_from_json(read_file(path)); }

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
    out << instance_to_json(inst);
}

SolverConfig config_from_json(const std::string& text) {
    const json j = parse(text);
    SolverConfig c;
    if (!j.is_object()) bad("config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "epsilon") c.epsilon = get<double>(j, "epsilon");
        else if (key == "tau") c.tau = get<double>(j, "tau");
        else if (key == "tau_mode") {
            const auto m = get<std::string>(j, "tau_mode");
            if (m == "relative") c.tau_mode = TauMode::Relative;
            else if (m == "absolute") c.tau_mode = TauMode::Absolute;
            else bad("tau_mode must be 'relative' or 'absolute'");
        } else if (key == "max_iterations") c.max_iterations = get<int>(j, "max_iterations");
        else if (key == "time_budget_seconds") c.time_budget_seconds = get<double>(j, "time_budget_seconds");
        else if (key == "thresholds") c.thresholds = get<std::vector<double>>(j, "thresholds");
        else if (key == "parallel_layers") c.parallel_layers = get<bool>(j, "parallel_layers");
        else if (key == "seed") (void)get<std::uint64_t>(j, "seed");
        else bad("unknown config field '" + key + "'");
    }
    validate_config(c);
    return c;
}

std::string config_to_json(const SolverConfig& c) {
    json j;
    j["epsilon"] = c.epsilon;
    j["tau"] = c.tau;
    j["tau_mode"] = c.tau_mode == TauMode::Relative ? "relative" : "absolute";
    j["max_iterations"] = c.max_iterations;
    j["time_budget_seconds"] = c.time_budget_seconds;
    j["thresholds"] = c.thresholds;
    j["parallel_layers"] = c.parallel_layers;
    return j.dump(1) + "\n";
}

namespace {

// depth_labels[k][v]: block of v after k rounds of bisection.
std::vector<std::vector<int>> bisection_labels(int rows, int cols, int depth) {
    struct Rect {
        int r0, r1, c0, c1;
    };
    std::vector<Rect> rects{{0, rows, 0, cols}};
    std::vector<std::vector<int>> labels(depth + 1, std::vector<int>(rows * cols, 0));
    for (int k = 1; k <= depth; ++k) {
        std::vector<Rect> next;
        for (const Rect& r : rects) {
            const int h = r.r1 - r.r0, w = r.c1 - r.c0;
            if (h >= w && h >= 2) {
                next.push_back({r.r0, r.r0 + h / 2, r.c0, r.c1});
                next.push_back({r.r0 + h / 2, r.r1, r.c0, r.c1});
            } else if (w >= 2) {
                next.push_back({r.r0, r.r1, r.c0, r.c0 + w / 2});
                next.push_back({r.r0, r.r1, r.c0 + w / 2, r.c1});
            } else {
                next.push_back(r);
            }
        }
        rects = std::move(next);
        for (int b = 0; b < static_cast<int>(rects.size()); ++b)
            for (int rr = rects[b].r0; rr < rects[b].r1; ++rr)
                for (int cc = rects[b].c0; cc < rects[b].c1; ++cc) labels[k][rr * cols + cc] = b;
    }
    return labels;
}

}  // namespace

BinaryHierarchy planted_hierarchy(int rows, int cols, int levels) {
    if (rows < 2 || cols < 2) throw Error(ErrorKind::BadDimensions, "grid needs rows, cols >= 2");
    if (levels < 1) throw Error(ErrorKind::BadDimensions, "grid needs at least one level");
    const PlanarGraph g = grid_graph(rows, cols);
    const auto labels = bisection_labels(rows, cols, levels);
    BinaryHierarchy h;
    for (int l = 1; l <= levels; ++l) {
        const auto& lab = labels[levels - l + 1];
        BinaryIndicator z(g.num_edges());
        for (EdgeId e = 0; e < g.num_edges(); ++e) z[e] = lab[g.edge(e).u] != lab[g.edge(e).v];
        h.levels.push_back(std::move(z));
    }
    return h;
}

Instance gen_grid(int rows, int cols, int levels, double noise, std::uint64_t seed) {
    if (!(noise >= 0.0)) throw Error(ErrorKind::InvalidInput, "noise must be >= 0");
    const BinaryHierarchy planted = planted_hierarchy(rows, cols, levels);
    PlanarGraph g = grid_graph(rows, cols);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-noise, noise);
    std::vector<double> theta(g.num_edges(), 0.0);
    std::vector<double> delta;
    for (int l = 1; l <= levels; ++l) delta.push_back(static_cast<double>(l));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        int top = 0;
        for (int l = 1; l <= levels; ++l)
            if (planted.levels[l - 1][e]) top = l;
        const double base = top == 0 ? 0.0 : delta[top - 1];
        const double j = noise > 0.0 ? jitter(rng) : 0.0;
        theta[e] = std::max(0.0, base + j);
    }
    Instance inst{with_thetas(g, theta), LevelSchedule(delta), {}};
    inst.metadata = {{"generator", "grid"},
                     {"rows", std::to_string(rows)},
                     {"cols", std::to_string(cols)},
                     {"levels", std::to_string(levels)},
                     {"noise", format_double(noise)},
                     {"seed", std::to_string(seed)}};
    return inst;
}

Instance gen_random(int vertices, int levels, std::uint64_t seed) {
    if (levels < 1) throw Error(ErrorKind::BadDimensions, "at least one level is required");
    std::mt19937_64 rng(seed);
    RandomGraphOptions opt;
    opt.vertices = vertices;
    opt.delete_fraction = 0.3;
    const PlanarGraph g = random_planar_graph(opt, rng);
    std::vector<double> theta(g.num_edges());
    for (double& t : theta) t = std::uniform_int_distribution<int>(0, 3 * levels + 3)(rng);
    std::vector<double> delta;
    for (int l = 1; l <= levels; ++l) delta.push_back(3.0 * l);
    Instance inst{with_thetas(g, theta), LevelSchedule(delta), {}};
    inst.metadata = {{"generator", "random"},
                     {"vertices", std::to_string(vertices)},
                     {"levels", std::to_string(levels)},
                     {"seed", std::to_string(seed)}};
    return inst;
}

void write_trace_csv(const SolveReport& report, std::ostream& out) {
    const int levels = report.pool.levels();
    out << "iter,dual_obj,penalized_obj,residual,lb,best_lb,ub,best_ub,gap,lp_iters";
    for (int l = 1; l <= levels; ++l) out << ",pool_" << l;
    out << '\n';
    for (const auto& r : report.trace) {
        out << r.iteration << ',' << format_double(r.dual_objective) << ',' << format_double(r.penalized_objective)
            << ',' << format_double(r.residual) << ',' << format_double(r.lower_bound) << ','
            << format_double(r.best_lower_bound) << ',' << format_double(r.upper_bound) << ','
            << format_double(r.best_upper_bound) << ',' << format_double(r.gap) << ',' << r.lp_iterations;
        for (int s : r.pool_sizes) out << ',' << s;
        out << '\n';
    }
}

void write_timing_csv(const SolveReport& report, std::ostream& out) {
    out << "iter,seconds\n";
    for (const auto& r : report.trace) out << r.iteration << ',' << format_double(r.seconds) << '\n';
}

void write_hierarchy_json(const Instance& inst, const BinaryHierarchy& hier, std::ostream& out) {
    json j;
    j["format"] = "ultraplanar-hierarchy";
    j["version"] = 1;
    j["num_vertices"] = inst.graph.num_vertices();
    j["num_edges"] = inst.graph.num_edges();
    json levels = json::array();
    for (std::size_t l = 0; l < hier.levels.size(); ++l) {
        std::vector<int> cut(hier.levels[l].begin(), hier.levels[l].end());
        const auto labels = connected_components(inst.graph, hier.levels[l]);
        levels.push_back({{"level", l + 1},
                          {"delta", inst.schedule.delta(static_cast<int>(l) + 1)},
                          {"num_components", count_labels(labels)},
                          {"labels", labels},
                          {"cut", cut}});
    }
    j["levels"] = std::move(levels);
    out << j.dump(1) << '\n';
}

BinaryHierarchy hierarchy_from_json(const std::string& text) {
    const json j = parse(text);
    if (get<std::string>(j, "format") != "ultraplanar-hierarchy") bad("unknown hierarchy format");
    BinaryHierarchy h;
    for (const auto& level : get<json>(j, "levels")) {
        const auto cut = get<std::vector<int>>(level, "cut");
        h.levels.emplace_back(cut.begin(), cut.end());
        h.labels.push_back(get<std::vector<int>>(level, "labels"));
    }
    return h;
}

void write_ultrametric_csv(const Instance& inst, const Ultrametric& um, std::ostream& out) {
    out << "edge,u,v,theta,length,distance\n";
    for (EdgeId e = 0; e < inst.graph.num_edges(); ++e) {
        const Edge& ed = inst.graph.edge(e);
        out << e << ',' << ed.u << ',' << ed.v << ',' << format_double(ed.theta) << ',' << format_double(ed.length)
            << ',' << format_double(um.edge_distance[e]) << '\n';
    }
}

std::string summary_json(const Instance& inst, const SolveReport& report) {
    json j;
    j["format"] = "ultraplanar-summary";
    j["version"] = 1;
    j["status"] = std::string(to_string(report.status));
    j["iterations"] = report.iterations;
    j["lb"] = report.lower_bound;
    j["ub"] = report.upper_bound;
    j["gap"] = report.gap;
    j["residual"] = report.final_residual;
    j["dual_obj"] = report.final_dual_objective;
    j["constant_term"] = report.constant_term;
    j["distortion"] = distortion(inst.graph.thetas(), inst.graph.lengths(), report.ultrametric.edge_distance);
    j["num_vertices"] = inst.graph.num_vertices();
    j["num_edges"] = inst.graph.num_edges();
    j["levels"] = inst.schedule.levels();
    std::vector<int> pools;
    for (int l = 1; l <= report.pool.levels(); ++l) pools.push_back(report.pool.size(l));
    j["pool_sizes"] = pools;
    return j.dump(1) + "\n";
}

}  // namespace ultraplanar
