// Command-line driver: solve, gen, baseline, ablate, oracle, eval.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "ultraplanar/baseline.hpp"
#include "ultraplanar/errors.hpp"
#include "ultraplanar/io.hpp"
#include "ultraplanar/oracles.hpp"
#include "ultraplanar/restricted_dual.hpp"
#include "ultraplanar/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ultraplanar;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInternal = 4;
constexpr const char* kOutEnv = "ULTRAPLANAR_OUT_DIR";

int report_error(std::string_view kind, const std::string& message, int code) {
    json j{{"error", std::string(kind)}, {"message", message}, {"exit_code", code}};
    std::cerr << j.dump() << std::endl;
    return code;
}

fs::path output_dir(const std::string& flag) {
    fs::path dir = flag;
    if (dir.empty()) {
        const char* env = std::getenv(kOutEnv);
        dir = env && *env ? env : "out";
    }
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path.string());
    out << text;
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct SolveFlags {
    std::string config_file;
    std::optional<double> epsilon, tau, time_budget;
    std::optional<int> max_iterations;
    std::string tau_mode;
    std::vector<double> thresholds;
    bool parallel = false;

    void attach(CLI::App* app) {
        app->add_option("--config", config_file, "JSON run configuration");
        app->add_option("--epsilon", epsilon, "penalty on ‖ω‖₁ (default 1e-4)");
        app->add_option("--tau", tau, "termination tolerance (default 1e-6)");
        app->add_option("--tau-mode", tau_mode, "relative or absolute")->check(CLI::IsMember({"relative", "absolute"}));
        app->add_option("--max-iter", max_iterations, "cutting-plane iteration cap (default 1000)");
        app->add_option("--time-budget", time_budget, "wall-clock budget in seconds, 0 disables (default 2000)");
        app->add_option("--thresholds", thresholds, "rounding thresholds in [0,1)");
        app->add_flag("--parallel", parallel, "separate layers on parallel threads");
    }

    SolverConfig build() const {
        SolverConfig c = config_file.empty() ? SolverConfig{} : config_from_json(read_text(config_file));
        if (epsilon) c.epsilon = *epsilon;
        if (tau) c.tau = *tau;
        if (!tau_mode.empty()) c.tau_mode = tau_mode == "absolute" ? TauMode::Absolute : TauMode::Relative;
        if (max_iterations) c.max_iterations = *max_iterations;
        if (time_budget) c.time_budget_seconds = *time_budget;
        if (!thresholds.empty()) c.thresholds = thresholds;
        c.parallel_layers = c.parallel_layers || parallel;
        validate_config(c);
        return c;
    }
};

int exit_for(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return kExitOk;
        case SolveStatus::IterationBudget:
        case SolveStatus::TimeBudget: return kExitBudget;
        case SolveStatus::Stalled: return kExitInternal;
    }
    return kExitInternal;
}

double hierarchy_distortion(const Instance& inst, const BinaryHierarchy& h) {
    const auto um = ultrametric_from_hierarchy(inst.graph, h, inst.schedule, false);
    return distortion(inst.graph.thetas(), inst.graph.lengths(), um.edge_distance);
}

void write_solve_outputs(const fs::path& dir, const Instance& inst, const SolveReport& r) {
    {
        std::ofstream f(dir / "trace.csv", std::ios::binary);
        write_trace_csv(r, f);
    }
    {
        std::ofstream f(dir / "timing.csv", std::ios::binary);
        write_timing_csv(r, f);
    }
    {
        std::ofstream f(dir / "hierarchy.json", std::ios::binary);
        write_hierarchy_json(inst, r.hierarchy, f);
    }
    {
        std::ofstream f(dir / "ultrametric.csv", std::ios::binary);
        write_ultrametric_csv(inst, r.ultrametric, f);
    }
    write_text(dir / "summary.json", summary_json(inst, r));
}

int cmd_solve(const std::string& path, const std::string& out_flag, const SolveFlags& flags,
              const std::string& dump_lp) {
    const Instance inst = load_instance(path);
    const SolverConfig cfg = flags.build();
    const SolveReport r = run(inst, cfg);
    write_solve_outputs(output_dir(out_flag), inst, r);
    if (!dump_lp.empty()) {
        RestrictedDual rd(inst.layer_weights(), cfg.epsilon);
        rd.sync(r.pool);
        std::ofstream f(dump_lp, std::ios::binary);
        lp::write_lp_file(rd.program(), f);
    }
    std::cout << "status=" << to_string(r.status) << " iterations=" << r.iterations
              << " lb=" << format_double(r.lower_bound) << " ub=" << format_double(r.upper_bound)
              << " gap=" << format_double(r.gap) << '\n';
    return exit_for(r.status);
}

int cmd_gen(const std::string& kind, int rows, int cols, int vertices, int levels, double noise, std::uint64_t seed,
            const std::string& out) {
    const Instance inst = kind == "grid" ? gen_grid(rows, cols, levels, noise, seed) : gen_random(vertices, levels, seed);
    if (out.empty() || out == "-") std::cout << instance_to_json(inst);
    else save_instance(inst, out);
    return kExitOk;
}

int cmd_baseline(const std::string& path, const std::string& out_flag, const SolveFlags& flags) {
    const Instance inst = load_instance(path);
    const LayerWeights lw = inst.layer_weights();
    const MergeTree tree = agglomerate(inst.graph, inst.graph.thetas());
    const ThresholdFit fit = fit_thresholds(tree, lw);
    const SolveReport r = run(inst, flags.build());

    BinaryHierarchy base{threshold_levels(tree, fit.thresholds), {}};
    const bool nested = is_monotone(base.levels);
    json j;
    j["format"] = "ultraplanar-baseline";
    j["version"] = 1;
    std::vector<json> qs;
    for (double q : fit.thresholds) qs.push_back(std::isfinite(q) ? json(q) : json("-inf"));
    j["thresholds"] = qs;
    j["level_costs"] = fit.level_cost;
    j["baseline_cost"] = fit.total;
    j["baseline_nested"] = nested;
    j["baseline_distortion"] = nested ? json(hierarchy_distortion(inst, base)) : json(nullptr);
    j["solver_ub"] = r.upper_bound;
    j["solver_lb"] = r.lower_bound;
    j["solver_status"] = std::string(to_string(r.status));
    j["solver_distortion"] = distortion(inst.graph.thetas(), inst.graph.lengths(), r.ultrametric.edge_distance);
    j["constant_term"] = r.constant_term;
    const fs::path dir = output_dir(out_flag);
    write_text(dir / "baseline.json", j.dump(1) + "\n");
    write_solve_outputs(dir, inst, r);
    std::cout << "baseline=" << format_double(fit.total) << " solver_ub=" << format_double(r.upper_bound) << '\n';
    return kExitOk;
}

int cmd_ablate(const std::string& path, const std::string& out_flag, const SolveFlags& flags) {
    const Instance inst = load_instance(path);
    const SolverConfig cfg = flags.build();
    const LayerWeights lw = inst.layer_weights();
    const IndependentResult ind = independent_layers(inst, cfg);
    const SolveReport r = run(inst, cfg);
    json layers = json::array();
    for (int l = 1; l <= lw.levels; ++l) {
        double hier = 0.0;
        for (int e = 0; e < lw.num_edges; ++e) hier += lw.theta[l][e] * r.hierarchy.levels[l - 1][e];
        layers.push_back({{"level", l},
                          {"independent_cost", ind.layers[l - 1].cost},
                          {"independent_lb", ind.layers[l - 1].lower_bound},
                          {"hierarchical_cost", hier},
                          {"independent_status", std::string(to_string(ind.layers[l - 1].status))}});
    }
    json j{{"format", "ultraplanar-ablation"},
           {"version", 1},
           {"layers", layers},
           {"independent_total", ind.total},
           {"hierarchical_total", r.upper_bound},
           {"monotonicity_violations", ind.monotonicity_violations}};
    write_text(output_dir(out_flag) / "ablation.json", j.dump(1) + "\n");
    std::cout << "monotonicity_violations=" << ind.monotonicity_violations << '\n';
    return kExitOk;
}

int cmd_oracle(const std::string& path, const std::string& out_flag) {
    const Instance inst = load_instance(path);
    const LayerWeights lw = inst.layer_weights();
    const auto best = oracles::brute_force_hierarchy(inst.graph, lw, lw.levels);
    std::vector<std::vector<int>> cuts;
    for (const auto& x : best.levels) cuts.emplace_back(x.begin(), x.end());
    json j{{"format", "ultraplanar-oracle"},
           {"version", 1},
           {"value", best.value},
           {"constant_term", lw.constant_term()},
           {"levels", cuts}};
    write_text(output_dir(out_flag) / "oracle.json", j.dump(1) + "\n");
    std::cout << "optimum=" << format_double(best.value) << '\n';
    return kExitOk;
}

double ratio(double num, double den) {
    if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

int cmd_eval(const std::vector<std::string>& dirs, const std::string& out_flag) {
    std::ostringstream table, traces;
    table << "instance,status,lb,ub,gap,baseline_cost,cost_ratio_baseline_over_solver,"
             "cost_ratio_solver_over_baseline,distortion_ratio_baseline_over_solver\n";
    traces << "instance,iter,lb,best_lb,best_ub,gap,residual\n";
    for (const auto& d : dirs) {
        const json s = json::parse(read_text(fs::path(d) / "summary.json"));
        const std::string name = fs::path(d).filename().string();
        double base = std::numeric_limits<double>::quiet_NaN(), dist_ratio = base;
        if (fs::exists(fs::path(d) / "baseline.json")) {
            const json b = json::parse(read_text(fs::path(d) / "baseline.json"));
            base = b.at("baseline_cost").get<double>();
            if (!b.at("baseline_distortion").is_null())
                dist_ratio = ratio(b.at("baseline_distortion").get<double>(), b.at("solver_distortion").get<double>());
        }
        const double ub = s.at("ub").get<double>();
        table << name << ',' << s.at("status").get<std::string>() << ',' << format_double(s.at("lb").get<double>())
              << ',' << format_double(ub) << ',' << format_double(s.at("gap").get<double>()) << ','
              << format_double(base) << ',' << format_double(ratio(base, ub)) << ',' << format_double(ratio(ub, base))
              << ',' << format_double(dist_ratio) << '\n';
        std::istringstream tr(read_text(fs::path(d) / "trace.csv"));
        std::string line;
        std::getline(tr, line);
        while (std::getline(tr, line)) {
            std::vector<std::string> f;
            std::stringstream ls(line);
            for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
            if (f.size() < 10) throw Error(ErrorKind::InvalidInput, "malformed trace in " + d);
            traces << name << ',' << f[0] << ',' << f[4] << ',' << f[5] << ',' << f[7] << ',' << f[8] << ',' << f[3]
                   << '\n';
        }
    }
    const fs::path dir = output_dir(out_flag);
    write_text(dir / "eval.csv", table.str());
    write_text(dir / "eval_traces.csv", traces.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical planar segmentation by ultrametric rounding"};
    app.require_subcommand(1);

    std::string instance_path, out_dir, dump_lp;
    SolveFlags flags;

    auto* solve = app.add_subcommand("solve", "run the cutting-plane solver on an instance");
    solve->add_option("instance", instance_path, "instance JSON")->required();
    solve->add_option("--out", out_dir, std::string("output directory (default $") + kOutEnv + " or ./out)");
    solve->add_option("--dump-lp", dump_lp, "write the final restricted LP in LP text format");
    flags.attach(solve);

    std::string kind = "grid", gen_out;
    int rows = 4, cols = 4, vertices = 7, levels = 2;
    double noise = 0.0;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("gen", "generate a synthetic instance");
    gen->add_option("--kind", kind, "grid or random")->check(CLI::IsMember({"grid", "random"}));
    gen->add_option("--rows", rows, "grid rows");
    gen->add_option("--cols", cols, "grid columns");
    gen->add_option("--vertices", vertices, "vertex count for random instances");
    gen->add_option("--levels", levels, "number of levels L");
    gen->add_option("--noise", noise, "uniform noise amplitude on θ");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    auto* base = app.add_subcommand("baseline", "agglomerative baseline with fitted thresholds");
    base->add_option("instance", instance_path, "instance JSON")->required();
    base->add_option("--out", out_dir, "output directory");
    flags.attach(base);

    auto* ablate = app.add_subcommand("ablate", "solve each layer independently (ω = 0)");
    ablate->add_option("instance", instance_path, "instance JSON")->required();
    ablate->add_option("--out", out_dir, "output directory");
    flags.attach(ablate);

    auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for tiny instances");
    oracle->add_option("instance", instance_path, "instance JSON")->required();
    oracle->add_option("--out", out_dir, "output directory");

    std::vector<std::string> eval_dirs;
    auto* eval = app.add_subcommand("eval", "join solve/baseline outputs into tables");
    eval->add_option("dirs", eval_dirs, "output directories of solve/baseline runs")->required();
    eval->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error("InvalidInput", e.what(), kExitInput);
    }

    try {
        if (*solve) return cmd_solve(instance_path, out_dir, flags, dump_lp);
        if (*gen) return cmd_gen(kind, rows, cols, vertices, levels, noise, seed, gen_out);
        if (*base) return cmd_baseline(instance_path, out_dir, flags);
        if (*ablate) return cmd_ablate(instance_path, out_dir, flags);
        if (*oracle) return cmd_oracle(instance_path, out_dir);
        if (*eval) return cmd_eval(eval_dirs, out_dir);
    } catch (const Error& e) {
        const int code = e.kind() == ErrorKind::IterationLimit ? kExitBudget
                         : is_input_error(e.kind())             ? kExitInput
                                                                : kExitInternal;
        return report_error(to_string(e.kind()), e.what(), code);
    } catch (const json::exception& e) {
        return report_error("InvalidInput", e.what(), kExitInput);
    } catch (const std::exception& e) {
        return report_error("Internal", e.what(), kExitInternal);
    }
    return kExitInternal;
}
