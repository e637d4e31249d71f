#include "ultraplanar/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "ultraplanar/errors.hpp"

namespace ultraplanar {

LayerWeights Instance::layer_weights() const {
    return ultraplanar::layer_weights(graph.thetas(), graph.lengths(), schedule);
}

void validate_config(const SolverConfig& c) {
    if (!(c.epsilon >= 0.0) || !std::isfinite(c.epsilon)) throw Error(ErrorKind::InvalidInput, "epsilon must be >= 0");
    if (!(c.tau > 0.0)) throw Error(ErrorKind::InvalidInput, "tau must be positive");
    if (c.max_iterations < 1) throw Error(ErrorKind::InvalidInput, "iteration cap must be positive");
    if (c.thresholds.empty()) throw Error(ErrorKind::InvalidInput, "at least one rounding threshold is required");
    for (double t : c.thresholds)
        if (!(t >= 0.0 && t < 1.0)) throw Error(ErrorKind::InvalidInput, "rounding thresholds must lie in [0,1)");
}

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::IterationBudget: return "iteration_budget";
        case SolveStatus::TimeBudget: return "time_budget";
        case SolveStatus::Stalled: return "stalled";
    }
    return "unknown";
}

CutColumn separate(const CutOracle& oracle, const LayerWeights& lw, const DualState& dual, int layer) {
    const std::vector<double> w = dual.adjusted_weights(lw, layer);
    return oracle.solve(w);
}

double lower_bound(double dual_objective, double residual) { return dual_objective + 1.5 * residual; }

FractionalHierarchy decode_fractional(const CutPool& pool, const PrimalState& primal) {
    const int levels = pool.levels(), ne = pool.num_edges();
    FractionalHierarchy x;
    x.levels.assign(levels, FractionalIndicator(ne, 0.0));
    std::vector<double> running(ne, 0.0);
    for (int l = levels; l >= 1; --l) {
        std::vector<double> cov(ne, 0.0);
        const auto& cols = pool.layer(l);
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const double g = k < primal.gamma[l].size() ? primal.gamma[l][k] : 0.0;
            if (g <= 0.0) continue;
            for (EdgeId e = 0; e < ne; ++e)
                if (cols[k][e]) cov[e] += g;
        }
        for (EdgeId e = 0; e < ne; ++e) {
            running[e] = std::max(running[e], cov[e]);
            x.levels[l - 1][e] = std::min(1.0, running[e]);
        }
    }
    return x;
}

RoundingResult round_hierarchy(const PlanarGraph& g, const FractionalHierarchy& x, const LayerWeights& lw,
                               std::span<const double> thresholds) {
    RoundingResult best;
    best.cost = std::numeric_limits<double>::infinity();
    const int levels = static_cast<int>(x.levels.size());
    for (double t : thresholds) {
        BinaryHierarchy h;
        for (int l = 0; l < levels; ++l) {
            BinaryIndicator z(g.num_edges(), 0);
            for (EdgeId e = 0; e < g.num_edges(); ++e) z[e] = x.levels[l][e] > t;
            std::vector<int> lab = connected_components(g, z);
            for (EdgeId e = 0; e < g.num_edges(); ++e)
                if (z[e] && lab[g.edge(e).u] == lab[g.edge(e).v]) z[e] = 0;
            h.levels.push_back(std::move(z));
            h.labels.push_back(std::move(lab));
        }
        const double cost = hierarchy_cost(h.levels, lw, false);
        if (cost < best.cost) {
            best.cost = cost;
            best.threshold = t;
            best.hierarchy = std::move(h);
        }
    }
    return best;
}

namespace {

std::vector<CutColumn> separate_all(const CutOracle& oracle, const LayerWeights& lw, const DualState& dual,
                                    bool parallel) {
    std::vector<CutColumn> out(lw.levels);
    if (!parallel || lw.levels == 1) {
        for (int l = 1; l <= lw.levels; ++l) out[l - 1] = separate(oracle, lw, dual, l);
        return out;
    }
    std::vector<std::exception_ptr> errors(lw.levels);
    std::vector<std::thread> workers;
    for (int l = 1; l <= lw.levels; ++l)
        workers.emplace_back([&, l] {
            try {
                out[l - 1] = separate(oracle, lw, dual, l);
            } catch (...) {
                errors[l - 1] = std::current_exception();
            }
        });
    for (auto& w : workers) w.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace

SolveReport run_weights(const PlanarGraph& g, const LayerWeights& lw, const SolverConfig& config) {
    validate_config(config);
    if (lw.num_edges != g.num_edges()) throw Error(ErrorKind::LengthMismatch, "layer weights do not match the graph");
    const auto start = std::chrono::steady_clock::now();
    const int levels = lw.levels;
    const CutOracle oracle(g);

    SolveReport report;
    report.constant_term = lw.constant_term();
    report.pool = CutPool(levels, g.num_edges());
    RestrictedDual restricted(lw, config.epsilon, config.lp);

    double best_lb = -std::numeric_limits<double>::infinity();
    double best_ub = std::numeric_limits<double>::infinity();
    report.status = SolveStatus::IterationBudget;

    for (int it = 1; it <= config.max_iterations; ++it) {
        restricted.sync(report.pool);
        const RestrictedSolution sol = restricted.solve();
        FractionalHierarchy frac = decode_fractional(report.pool, sol.primal);
        RoundingResult rounded = round_hierarchy(g, frac, lw, config.thresholds);
        if (rounded.cost < best_ub) {
            best_ub = rounded.cost;
            report.hierarchy = std::move(rounded.hierarchy);
        }

        const std::vector<CutColumn> cols = separate_all(oracle, lw, sol.dual, config.parallel_layers);
        double residual = 0.0;
        for (const auto& c : cols) residual += std::min(0.0, c.weight);
        const double lb = lower_bound(sol.dual_objective, residual);

        TraceRow row;
        row.iteration = it;
        row.dual_objective = sol.dual_objective;
        row.penalized_objective = sol.penalized_objective;
        row.residual = residual;
        row.lower_bound = lb;
        row.lower_bound_dropped = lb < best_lb;
        best_lb = std::max(best_lb, lb);
        row.best_lower_bound = best_lb;
        row.upper_bound = rounded.cost;
        row.best_upper_bound = best_ub;
        row.gap = (best_ub - best_lb) / std::max(1.0, std::abs(best_lb));
        row.fractional_cost = hierarchy_cost(frac.levels, lw, false);
        row.expanded_objective = expanded_objective(sol.primal, lw);
        if (config.check_cycle_inequalities) {
            int count = 0;
            for (const auto& level : frac.levels) count += static_cast<int>(separate_cycle_inequalities(g, level).size());
            row.cycle_violations = count;
        }
        row.lp_iterations = sol.lp_iterations;
        for (int l = 1; l <= levels; ++l) row.pool_sizes.push_back(report.pool.size(l));
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.trace.push_back(row);

        report.iterations = it;
        report.final_residual = residual;
        report.final_dual_objective = sol.dual_objective;
        report.dual = sol.dual;
        report.fractional = std::move(frac);

        const double scaled = config.tau_mode == TauMode::Relative ? residual / std::max(1.0, std::abs(best_lb)) : residual;
        if (scaled > -config.tau) {
            report.status = SolveStatus::Converged;
            break;
        }

        bool added = false;
        for (int l = 1; l <= levels; ++l) {
            if (cols[l - 1].weight >= 0.0) continue;
            for (auto& z : unique_columns(isocuts(g, cols[l - 1].z))) added |= report.pool.add(l, std::move(z));
        }
        if (!added) {
            report.status = SolveStatus::Stalled;
            break;
        }
        if (config.time_budget_seconds > 0.0 && row.seconds > config.time_budget_seconds) {
            report.status = SolveStatus::TimeBudget;
            break;
        }
    }

    report.lower_bound = best_lb;
    report.upper_bound = best_ub;
    report.gap = (best_ub - best_lb) / std::max(1.0, std::abs(best_lb));
    validate_hierarchy(g, report.hierarchy, levels);
    return report;
}

SolveReport run(const Instance& instance, const SolverConfig& config) {
    SolveReport report = run_weights(instance.graph, instance.layer_weights(), config);
    report.ultrametric =
        ultrametric_from_hierarchy(instance.graph, report.hierarchy, instance.schedule, config.all_pairs_distances);
    return report;
}

}  // namespace ultraplanar
