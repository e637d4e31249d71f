#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ultraplanar/baseline.hpp"
#include "ultraplanar/cut_oracle.hpp"
#include "ultraplanar/errors.hpp"
#include "ultraplanar/generators.hpp"
#include "ultraplanar/io.hpp"
#include "ultraplanar/matching.hpp"
#include "ultraplanar/oracles.hpp"
#include "ultraplanar/solver.hpp"

namespace py = pybind11;
using namespace ultraplanar;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::list levels_to_list(const std::vector<BinaryIndicator>& levels) {
    py::list out;
    for (const auto& x : levels) out.append(to_array(x));
    return out;
}

std::vector<BinaryIndicator> levels_from(const std::vector<std::vector<int>>& in) {
    std::vector<BinaryIndicator> out;
    for (const auto& x : in) out.emplace_back(x.begin(), x.end());
    return out;
}

PlanarGraph make_graph(int n, const std::vector<py::tuple>& edges, const std::vector<std::vector<EdgeId>>& rotation) {
    std::vector<Edge> es;
    for (const auto& t : edges) {
        if (t.size() < 2 || t.size() > 4) throw Error(ErrorKind::InvalidInput, "edges are (u, v[, theta[, length]])");
        Edge e;
        e.u = t[0].cast<int>();
        e.v = t[1].cast<int>();
        if (t.size() > 2) e.theta = t[2].cast<double>();
        if (t.size() > 3) e.length = t[3].cast<double>();
        es.push_back(e);
    }
    return PlanarGraph(n, std::move(es), rotation);
}

py::dict trace_row(const TraceRow& t) {
    py::dict d;
    d["iteration"] = t.iteration;
    d["seconds"] = t.seconds;
    d["dual_objective"] = t.dual_objective;
    d["penalized_objective"] = t.penalized_objective;
    d["residual"] = t.residual;
    d["lower_bound"] = t.lower_bound;
    d["best_lower_bound"] = t.best_lower_bound;
    d["upper_bound"] = t.upper_bound;
    d["best_upper_bound"] = t.best_upper_bound;
    d["gap"] = t.gap;
    d["fractional_cost"] = t.fractional_cost;
    d["expanded_objective"] = t.expanded_objective;
    d["cycle_violations"] = t.cycle_violations;
    d["lp_iterations"] = t.lp_iterations;
    d["pool_sizes"] = t.pool_sizes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchical planar segmentation by dual ultrametric rounding";

    static py::exception<Error> error_type(m, "UltraplanarError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(e.what()));
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    py::class_<PlanarGraph>(m, "PlanarGraph")
        .def(py::init(&make_graph), py::arg("num_vertices"), py::arg("edges"), py::arg("rotation"),
             "Graph from (u, v[, theta[, length]]) edges and a rotation system (edge ids per vertex).")
        .def_static(
            "from_positions",
            [](const std::vector<std::pair<double, double>>& pos, const std::vector<std::pair<int, int>>& edges) {
                std::vector<Point> pts;
                for (auto [x, y] : pos) pts.push_back({x, y});
                return straight_line_graph(pts, edges);
            },
            py::arg("positions"), py::arg("edges"), "Straight-line embedding; rotations sorted counter-clockwise.")
        .def_static("grid", &grid_graph, py::arg("rows"), py::arg("cols"))
        .def_property_readonly("num_vertices", &PlanarGraph::num_vertices)
        .def_property_readonly("num_edges", &PlanarGraph::num_edges)
        .def_property_readonly("edges",
                               [](const PlanarGraph& g) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("rotation", &PlanarGraph::rotations)
        .def_property_readonly("theta", [](const PlanarGraph& g) { return to_array(g.thetas()); })
        .def_property_readonly("length", [](const PlanarGraph& g) { return to_array(g.lengths()); })
        .def("with_theta", &with_thetas, py::arg("theta"))
        .def("num_faces", [](const PlanarGraph& g) { return validate_embedding(g).num_faces(); })
        .def("components",
             [](const PlanarGraph& g, const std::vector<int>& cut) {
                 const BinaryIndicator x(cut.begin(), cut.end());
                 return to_array(connected_components(g, x));
             })
        .def("is_multicut", [](const PlanarGraph& g, const std::vector<int>& cut) {
            const BinaryIndicator x(cut.begin(), cut.end());
            return is_multicut(g, x);
        });

    m.def(
        "min_weight_cut",
        [](const PlanarGraph& g, const std::vector<double>& w) {
            const CutColumn c = min_weight_cut(g, w);
            return py::make_tuple(to_array(c.z), c.weight);
        },
        py::arg("graph"), py::arg("weights"), "Exact minimum-weight two-way cut; returns (indicator, weight).");

    m.def(
        "min_weight_perfect_matching",
        [](int n, const std::vector<std::tuple<int, int, double>>& edges) {
            MatchingGraph g(n);
            for (auto [u, v, w] : edges) g.add_edge(u, v, w);
            const Matching mt = min_weight_perfect_matching(g);
            return py::make_tuple(mt.edges, mt.weight);
        },
        py::arg("num_nodes"), py::arg("edges"), "Blossom matching; returns (edge ids, weight).");

    py::class_<LevelSchedule>(m, "LevelSchedule")
        .def(py::init<std::vector<double>>(), py::arg("thresholds"))
        .def_property_readonly("levels", &LevelSchedule::levels)
        .def_property_readonly("thresholds", &LevelSchedule::thresholds);

    py::class_<Instance>(m, "Instance")
        .def(py::init([](const PlanarGraph& g, const std::vector<double>& thresholds,
                         const std::map<std::string, std::string>& meta) {
                 Instance inst{g, LevelSchedule(thresholds), meta};
                 validate_instance(inst);
                 return inst;
             }),
             py::arg("graph"), py::arg("thresholds"), py::arg("metadata") = std::map<std::string, std::string>{})
        .def_readonly("graph", &Instance::graph)
        .def_property_readonly("thresholds", [](const Instance& i) { return i.schedule.thresholds(); })
        .def_property_readonly("levels", [](const Instance& i) { return i.schedule.levels(); })
        .def_readonly("metadata", &Instance::metadata)
        .def("layer_weights",
             [](const Instance& i) {
                 const LayerWeights lw = i.layer_weights();
                 py::list out;
                 for (const auto& w : lw.theta) out.append(to_array(w));
                 return out;
             },
             "θ^l per level l = 0..L as arrays.")
        .def("to_json", &instance_to_json)
        .def_static("from_json", &instance_from_json, py::arg("text"))
        .def_static("load", [](const std::string& p) { return load_instance(p); }, py::arg("path"))
        .def("save", [](const Instance& i, const std::string& p) { save_instance(i, p); }, py::arg("path"));

    m.def("gen_grid", &gen_grid, py::arg("rows"), py::arg("cols"), py::arg("levels"), py::arg("noise") = 0.0,
          py::arg("seed") = 0);
    m.def("gen_random", &gen_random, py::arg("vertices"), py::arg("levels"), py::arg("seed") = 0);
    m.def(
        "planted_hierarchy",
        [](int rows, int cols, int levels) { return levels_to_list(planted_hierarchy(rows, cols, levels).levels); },
        py::arg("rows"), py::arg("cols"), py::arg("levels"));

    py::enum_<TauMode>(m, "TauMode").value("RELATIVE", TauMode::Relative).value("ABSOLUTE", TauMode::Absolute);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("epsilon", &SolverConfig::epsilon)
        .def_readwrite("tau", &SolverConfig::tau)
        .def_readwrite("tau_mode", &SolverConfig::tau_mode)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("time_budget_seconds", &SolverConfig::time_budget_seconds)
        .def_readwrite("thresholds", &SolverConfig::thresholds)
        .def_readwrite("parallel_layers", &SolverConfig::parallel_layers)
        .def_readwrite("check_cycle_inequalities", &SolverConfig::check_cycle_inequalities)
        .def_readwrite("all_pairs_distances", &SolverConfig::all_pairs_distances)
        .def("to_json", &config_to_json)
        .def_static("from_json", &config_from_json, py::arg("text"));

    py::class_<SolveReport>(m, "SolveReport")
        .def_property_readonly("status", [](const SolveReport& r) { return std::string(to_string(r.status)); })
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("lower_bound", &SolveReport::lower_bound)
        .def_readonly("upper_bound", &SolveReport::upper_bound)
        .def_readonly("gap", &SolveReport::gap)
        .def_readonly("constant_term", &SolveReport::constant_term)
        .def_readonly("final_residual", &SolveReport::final_residual)
        .def_property_readonly("hierarchy", [](const SolveReport& r) { return levels_to_list(r.hierarchy.levels); })
        .def_property_readonly("labels",
                               [](const SolveReport& r) {
                                   py::list out;
                                   for (const auto& l : r.hierarchy.labels) out.append(to_array(l));
                                   return out;
                               })
        .def_property_readonly("fractional",
                               [](const SolveReport& r) {
                                   py::list out;
                                   for (const auto& x : r.fractional.levels) out.append(to_array(x));
                                   return out;
                               })
        .def_property_readonly("edge_distance",
                               [](const SolveReport& r) { return to_array(r.ultrametric.edge_distance); })
        .def_property_readonly("pair_distance", [](const SolveReport& r) { return r.ultrametric.pair_distance; })
        .def_property_readonly("pool_sizes",
                               [](const SolveReport& r) {
                                   std::vector<int> s;
                                   for (int l = 1; l <= r.pool.levels(); ++l) s.push_back(r.pool.size(l));
                                   return s;
                               })
        .def_property_readonly("trace",
                               [](const SolveReport& r) {
                                   py::list out;
                                   for (const auto& t : r.trace) out.append(trace_row(t));
                                   return out;
                               })
        .def("trace_csv", [](const SolveReport& r) {
            std::ostringstream os;
            write_trace_csv(r, os);
            return os.str();
        });

    m.def(
        "solve", [](const Instance& inst, const SolverConfig& cfg) { return run(inst, cfg); }, py::arg("instance"),
        py::arg("config") = SolverConfig{}, py::call_guard<py::gil_scoped_release>(),
        "Cutting-plane solve with certified lower and upper bounds.");
    m.def("summary_json", &summary_json, py::arg("instance"), py::arg("report"));

    m.def(
        "baseline",
        [](const Instance& inst) {
            const MergeTree tree = agglomerate(inst.graph, inst.graph.thetas());
            const ThresholdFit fit = fit_thresholds(tree, inst.layer_weights());
            py::dict d;
            d["merge_height"] = to_array(tree.height);
            d["thresholds"] = fit.thresholds;
            d["level_costs"] = fit.level_cost;
            d["total"] = fit.total;
            d["hierarchy"] = levels_to_list(threshold_levels(tree, fit.thresholds));
            return d;
        },
        py::arg("instance"), "Single-linkage merge heights with per-level thresholds fitted to the rounding cost.");

    m.def(
        "independent_layers",
        [](const Instance& inst, const SolverConfig& cfg) {
            const IndependentResult r = independent_layers(inst, cfg);
            py::list layers;
            for (const auto& l : r.layers) {
                py::dict d;
                d["cut"] = to_array(l.cut);
                d["cost"] = l.cost;
                d["lower_bound"] = l.lower_bound;
                d["status"] = std::string(to_string(l.status));
                layers.append(d);
            }
            py::dict out;
            out["layers"] = layers;
            out["total"] = r.total;
            out["monotonicity_violations"] = r.monotonicity_violations;
            return out;
        },
        py::arg("instance"), py::arg("config") = SolverConfig{});

    auto o = m.def_submodule("oracles", "Exhaustive references for tiny inputs");
    o.def(
        "min_cut",
        [](const PlanarGraph& g, const std::vector<double>& w) {
            const auto r = oracles::brute_force_min_cut(g, w);
            return py::make_tuple(to_array(r.z), r.value);
        },
        py::arg("graph"), py::arg("weights"));
    o.def(
        "multicut",
        [](const PlanarGraph& g, const std::vector<double>& w) {
            const auto r = oracles::brute_force_multicut(g, w);
            return py::make_tuple(to_array(r.cut), r.value);
        },
        py::arg("graph"), py::arg("weights"));
    o.def(
        "hierarchy",
        [](const Instance& inst) {
            const LayerWeights lw = inst.layer_weights();
            const auto r = oracles::brute_force_hierarchy(inst.graph, lw, lw.levels);
            return py::make_tuple(levels_to_list(r.levels), r.value);
        },
        py::arg("instance"));
    m.def(
        "hierarchy_cost",
        [](const Instance& inst, const std::vector<std::vector<int>>& levels, bool include_l0) {
            return hierarchy_cost(levels_from(levels), inst.layer_weights(), include_l0);
        },
        py::arg("instance"), py::arg("levels"), py::arg("include_l0") = false);
}
