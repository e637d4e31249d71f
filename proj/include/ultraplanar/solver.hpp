#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ultraplanar/cut_oracle.hpp"
#include "ultraplanar/instance.hpp"
#include "ultraplanar/lp.hpp"
#include "ultraplanar/restricted_dual.hpp"
#include "ultraplanar/weights.hpp"

namespace ultraplanar {

enum class TauMode { Relative, Absolute };

struct SolverConfig {
    double epsilon = 1e-4;
    // Stop once Δ / max(1, |LB|) > -tau (relative) or Δ > -tau (absolute).
    TauMode tau_mode = TauMode::Relative;
    double tau = 1e-6;
    int max_iterations = 1000;
    double time_budget_seconds = 2000.0;  // <= 0 disables the wall-clock budget
    std::vector<double> thresholds{0.0, 0.2, 0.4, 0.6, 0.8};
    bool parallel_layers = false;
    // Runs the cycle-inequality separator on every decoded fractional
    // hierarchy and records the violation count in the trace.
    bool check_cycle_inequalities = false;
    bool all_pairs_distances = false;
    lp::SimplexOptions lp;
};

// Throws Error{InvalidInput} for nonpositive tolerances or thresholds outside [0,1).
void validate_config(const SolverConfig& config);

enum class SolveStatus { Converged, IterationBudget, TimeBudget, Stalled };
std::string_view to_string(SolveStatus status);

struct TraceRow {
    int iteration = 0;
    double seconds = 0.0;
    double dual_objective = 0.0;
    double penalized_objective = 0.0;
    double residual = 0.0;  // Σ_l separation value, <= 0
    double lower_bound = 0.0;
    double best_lower_bound = 0.0;
    double upper_bound = 0.0;  // rounded cost found this iteration
    double best_upper_bound = 0.0;
    double gap = 0.0;
    double fractional_cost = 0.0;     // Σ_l θ^l·X^l of the decoded hierarchy
    double expanded_objective = 0.0;  // expanded primal value of (γ, α, β)
    int cycle_violations = -1;        // -1 when not checked
    bool lower_bound_dropped = false;
    long lp_iterations = 0;
    std::vector<int> pool_sizes;  // per layer, before this iteration's additions
};

struct SolveReport {
    SolveStatus status = SolveStatus::Converged;
    int iterations = 0;
    std::vector<TraceRow> trace;
    double lower_bound = 0.0;  // best over iterations
    double upper_bound = 0.0;  // best rounded cost, l = 0 term excluded
    double gap = 0.0;          // (UB - LB) / max(1, |LB|)
    double constant_term = 0.0;  // Σ_e θ^0_e; add to UB for the distortion
    double final_residual = 0.0;
    double final_dual_objective = 0.0;
    BinaryHierarchy hierarchy;
    FractionalHierarchy fractional;
    Ultrametric ultrametric;
    DualState dual;
    CutPool pool;
};

/// Minimum-weight cut under θ^l + λ^l + ω^{l-1} - ω^l.
CutColumn separate(const CutOracle& oracle, const LayerWeights& lw, const DualState& dual, int layer);

// dual_objective + (3/2) Δ
double lower_bound(double dual_objective, double residual);

/// X^l = min(1, max_{m>=l} Ẑ^m γ^m), edge by edge.
FractionalHierarchy decode_fractional(const CutPool& pool, const PrimalState& primal);

struct RoundingResult {
    BinaryHierarchy hierarchy;
    double cost = 0.0;  // l = 0 term excluded
    double threshold = 0.0;
};

/// Thresholds every level at each t, repairs cut edges that lie inside a
/// component, and returns the cheapest candidate (earliest t on ties).
RoundingResult round_hierarchy(const PlanarGraph& g, const FractionalHierarchy& x, const LayerWeights& lw,
                               std::span<const double> thresholds);

SolveReport run(const Instance& instance, const SolverConfig& config = {});

// The same loop on arbitrary per-layer weights; the report has no ultrametric.
SolveReport run_weights(const PlanarGraph& g, const LayerWeights& lw, const SolverConfig& config = {});

}  // namespace ultraplanar
