#pragma once

#include <span>
#include <vector>

#include "ultraplanar/graph.hpp"
#include "ultraplanar/instance.hpp"
#include "ultraplanar/solver.hpp"
#include "ultraplanar/weights.hpp"

namespace ultraplanar {

/// Merge height per edge, scaled into [0,1]: thresholding at any q gives a
/// multicut.
struct MergeTree {
    std::vector<double> height;
};

/// Single-linkage agglomeration: edges in increasing strength (id breaks
/// ties); when an edge joins two clusters, every edge between them gets
/// that strength as its merge height.
MergeTree agglomerate(const PlanarGraph& g, std::span<const double> strengths);

struct ThresholdFit {
    std::vector<double> thresholds;  // q^1..q^L; -inf means "cut every edge"
    std::vector<double> level_cost;  // Σ_e θ^l_e [U_e > q^l]
    double total = 0.0;
};

/// Per level, the cheapest q in {-inf} ∪ {U_e}; ties go to the smaller q.
ThresholdFit fit_thresholds(const MergeTree& tree, const LayerWeights& lw);

// X̄^l = [U > q^l] for every level.
std::vector<BinaryIndicator> threshold_levels(const MergeTree& tree, std::span<const double> thresholds);

struct LayerSolution {
    BinaryIndicator cut;
    double cost = 0.0;         // θ^l · cut
    double lower_bound = 0.0;  // certified bound for this layer alone
    SolveStatus status = SolveStatus::Converged;
};

struct IndependentResult {
    std::vector<LayerSolution> layers;  // index l-1
    int monotonicity_violations = 0;    // edges with X̄^{l+1}_e > X̄^l_e, summed over l
    double total = 0.0;
};

/// Ablation with ω ≡ 0: one single-level solve per θ^l, no nesting enforced.
IndependentResult independent_layers(const Instance& instance, const SolverConfig& config = {});

}  // namespace ultraplanar
